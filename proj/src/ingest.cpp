#include "trendsig/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "trendsig/error.hpp"

namespace trendsig {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

bool to_int(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool to_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_missing(std::string_view v) { return v.empty() || v == "NA" || v == "na" || v == "NaN"; }

std::string in_quotes(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

MonthlySeries parse_series(std::istream& in, std::string name) {
  std::vector<SeriesPoint> points;
  std::map<int, std::size_t> seen;  // ordinal -> line
  std::string raw;
  std::size_t line_no = 0;
  bool first_content = true;

  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, ',');

    int year = 0;
    if (first_content) {
      first_content = false;
      if (!to_int(fields[0], year)) continue;  // header
    }
    if (fields.size() != 3) {
      throw Error(Errc::ParseError, "expected 3 fields (year,month,value), got " + std::to_string(fields.size()),
                  line_no);
    }
    int month = 0;
    if (!to_int(fields[0], year)) throw Error(Errc::ParseError, "bad year " + in_quotes(fields[0]), line_no);
    if (!to_int(fields[1], month)) throw Error(Errc::ParseError, "bad month " + in_quotes(fields[1]), line_no);
    if (month < 1 || month > 12) {
      throw Error(Errc::MonthOutOfRange, "month " + std::to_string(month) + " outside 1..12", line_no);
    }
    if (is_missing(fields[2])) continue;
    double value = 0.0;
    if (!to_double(fields[2], value)) throw Error(Errc::ParseError, "bad value " + in_quotes(fields[2]), line_no);

    MonthIndex m(year, month);
    auto [it, inserted] = seen.emplace(m.ordinal(), line_no);
    if (!inserted) {
      throw Error(Errc::DuplicateMonth,
                  "month " + to_string(m) + " already given on line " + std::to_string(it->second), line_no);
    }
    points.push_back({m, value});
  }

  std::stable_sort(points.begin(), points.end(),
                   [](const SeriesPoint& a, const SeriesPoint& b) { return a.month < b.month; });
  return MonthlySeries(std::move(name), std::move(points));
}

MonthlySeries read_series(const std::filesystem::path& path, std::optional<std::string> name) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open series file " + path.string());
  try {
    return parse_series(in, name ? *name : path.stem().string());
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

void write_series(std::ostream& out, const MonthlySeries& s) {
  out << "year,month,value\n";
  char buf[64];
  for (const auto& p : s) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p.value);
    out << p.month.year() << ',' << p.month.month() << ',' << std::string_view(buf, end - buf) << '\n';
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(DatasetKind k) {
  switch (k) {
    case DatasetKind::satellite: return "satellite";
    case DatasetKind::surface_landocean: return "surface_landocean";
    case DatasetKind::surface_ocean: return "surface_ocean";
    case DatasetKind::surface_land: return "surface_land";
  }
  return "satellite";
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view text) {
  for (auto k : {DatasetKind::satellite, DatasetKind::surface_landocean, DatasetKind::surface_ocean,
                 DatasetKind::surface_land}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(CompareMode m) { return m == CompareMode::trend ? "trend" : "lapse"; }

const DatasetEntry& Registry::dataset(std::string_view id) const {
  for (const auto& d : datasets) {
    if (d.id == id) return d;
  }
  throw Error(Errc::UnknownDatasetId, "unknown dataset id " + in_quotes(id));
}

const ComparisonSpec& Registry::comparison(std::string_view id) const {
  for (const auto& c : comparisons) {
    if (c.id == id) return c;
  }
  throw Error(Errc::BadSpec, "unknown comparison id " + in_quotes(id));
}

namespace {

struct Field {
  std::string value;
  std::size_t line;
};

struct Section {
  std::string type;
  std::string id;
  std::size_t line;
  std::map<std::string, Field, std::less<>> fields;

  const Field* find(std::string_view key) const {
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &it->second;
  }
};

const std::set<std::string, std::less<>> kDatasetKeys{"kind", "path", "version", "notes"};
const std::set<std::string, std::less<>> kComparisonKeys{
    "table", "mode", "satellite", "surface", "ensemble_trend", "ensemble_sd", "n_models", "start", "end"};

std::vector<Section> parse_sections(std::istream& in) {
  std::vector<Section> sections;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw Error(Errc::ParseError, "unterminated section header", line_no);
      auto inner = trim(line.substr(1, line.size() - 2));
      auto sp = inner.find_first_of(" \t");
      if (sp == std::string_view::npos) {
        throw Error(Errc::ParseError, "section header needs a type and an id: [dataset ID] or [comparison ID]",
                    line_no);
      }
      auto type = inner.substr(0, sp);
      auto id = trim(inner.substr(sp));
      if (type != "dataset" && type != "comparison") {
        throw Error(Errc::ParseError, "unknown section type " + in_quotes(type), line_no);
      }
      if (id.find_first_of(" \t") != std::string_view::npos) {
        throw Error(Errc::ParseError, "section id must not contain spaces", line_no);
      }
      sections.push_back({std::string(type), std::string(id), line_no, {}});
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::ParseError, "expected key = value", line_no);
    if (sections.empty()) throw Error(Errc::ParseError, "key outside of a section", line_no);
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    auto& sec = sections.back();
    const auto& allowed = sec.type == "dataset" ? kDatasetKeys : kComparisonKeys;
    if (!allowed.contains(key)) {
      throw Error(Errc::ParseError, "unknown key " + in_quotes(key) + " in " + sec.type + " section", line_no);
    }
    if (!sec.fields.emplace(std::string(key), Field{std::string(value), line_no}).second) {
      throw Error(Errc::ParseError, "duplicate key " + in_quotes(key), line_no);
    }
  }
  return sections;
}

DatasetEntry build_dataset(const Section& sec, const std::filesystem::path& base_dir) {
  DatasetEntry d;
  d.id = sec.id;
  const Field* kind = sec.find("kind");
  if (!kind) throw Error(Errc::BadSpec, "dataset " + in_quotes(sec.id) + " has no kind", sec.line);
  auto k = parse_dataset_kind(kind->value);
  if (!k) throw Error(Errc::BadSpec, "dataset " + in_quotes(sec.id) + ": unknown kind " + in_quotes(kind->value), kind->line);
  d.kind = *k;
  const Field* path = sec.find("path");
  if (!path || path->value.empty()) {
    throw Error(Errc::BadSpec, "dataset " + in_quotes(sec.id) + " has no path", sec.line);
  }
  std::filesystem::path p(path->value);
  d.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  if (const Field* f = sec.find("version")) d.version = f->value;
  if (const Field* f = sec.find("notes")) d.notes = f->value;
  return d;
}

double ensemble_number(const Section& sec, std::string_view key) {
  const Field* f = sec.find(key);
  if (!f || f->value.empty()) {
    throw Error(Errc::MissingEnsembleField, "comparison " + in_quotes(sec.id) + " is missing " + std::string(key),
                sec.line);
  }
  double v = 0.0;
  if (!to_double(f->value, v)) throw Error(Errc::ParseError, "bad number for " + std::string(key), f->line);
  return v;
}

MonthIndex window_bound(const Section& sec, std::string_view key) {
  const Field* f = sec.find(key);
  if (!f) throw Error(Errc::BadWindow, "comparison " + in_quotes(sec.id) + " is missing " + std::string(key), sec.line);
  try {
    return MonthIndex::parse(f->value);
  } catch (const Error& e) {
    throw Error(Errc::BadWindow, std::string(key) + ": " + e.what(), f->line);
  }
}

ComparisonSpec build_comparison(const Section& sec) {
  ComparisonSpec c;
  c.id = sec.id;
  if (const Field* f = sec.find("table")) c.table = f->value;

  if (const Field* f = sec.find("mode")) {
    if (f->value == "trend") {
      c.mode = CompareMode::trend;
    } else if (f->value == "lapse") {
      c.mode = CompareMode::lapse;
    } else {
      throw Error(Errc::BadSpec, "mode must be trend or lapse, got " + in_quotes(f->value), f->line);
    }
  }

  const Field* sat = sec.find("satellite");
  if (!sat || sat->value.empty()) {
    throw Error(Errc::BadSpec, "comparison " + in_quotes(sec.id) + " has no satellite", sec.line);
  }
  c.satellite_id = sat->value;
  if (const Field* f = sec.find("surface"); f && !f->value.empty()) c.surface_id = f->value;
  if (c.mode == CompareMode::lapse && !c.surface_id) {
    throw Error(Errc::BadSpec, "comparison " + in_quotes(sec.id) + ": lapse mode requires a surface dataset", sec.line);
  }
  if (c.mode == CompareMode::trend && c.surface_id) {
    throw Error(Errc::BadSpec, "comparison " + in_quotes(sec.id) + ": trend mode takes no surface dataset", sec.line);
  }

  c.ensemble.trend = ensemble_number(sec, "ensemble_trend");
  c.ensemble.inter_model_sd = ensemble_number(sec, "ensemble_sd");
  const Field* nm = sec.find("n_models");
  if (!nm || nm->value.empty()) {
    throw Error(Errc::MissingEnsembleField, "comparison " + in_quotes(sec.id) + " is missing n_models", sec.line);
  }
  if (!to_int(nm->value, c.ensemble.n_models)) throw Error(Errc::ParseError, "n_models must be an integer", nm->line);
  try {
    c.ensemble.validate();
  } catch (const Error& e) {
    throw Error(e.code(), "comparison " + in_quotes(sec.id) + ": " + e.what(), sec.line);
  }

  c.start = window_bound(sec, "start");
  c.end = window_bound(sec, "end");
  if (c.end < c.start) {
    throw Error(Errc::BadWindow, "comparison " + in_quotes(sec.id) + ": start " + to_string(c.start) + " after end " +
                                     to_string(c.end), sec.line);
  }
  return c;
}

}  // namespace

Registry parse_registry(std::istream& in, const std::filesystem::path& base_dir) {
  Registry reg;
  std::set<std::string, std::less<>> dataset_ids;
  std::set<std::string, std::less<>> comparison_ids;
  for (const auto& sec : parse_sections(in)) {
    if (sec.type == "dataset") {
      if (!dataset_ids.insert(sec.id).second) throw Error(Errc::BadSpec, "duplicate dataset id " + in_quotes(sec.id), sec.line);
      reg.datasets.push_back(build_dataset(sec, base_dir));
    } else {
      if (!comparison_ids.insert(sec.id).second) {
        throw Error(Errc::BadSpec, "duplicate comparison id " + in_quotes(sec.id), sec.line);
      }
      reg.comparisons.push_back(build_comparison(sec));
    }
  }
  for (const auto& c : reg.comparisons) {
    for (const auto* id : {&c.satellite_id, c.surface_id ? &*c.surface_id : nullptr}) {
      if (id && !dataset_ids.contains(*id)) {
        throw Error(Errc::UnknownDatasetId, "comparison " + in_quotes(c.id) + " references unknown dataset " + in_quotes(*id));
      }
    }
  }
  return reg;
}

Registry read_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open registry " + path.string());
  try {
    return parse_registry(in, path.parent_path());
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

}  // namespace trendsig
