#include "trendsig/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "trendsig/error.hpp"
#include "trendsig/mc.hpp"
#include "trendsig/trend.hpp"

namespace trendsig {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string window_label(const TableRow& r) { return to_string(r.start) + "-" + to_string(r.end); }

std::string marks_label(const TestResult& t) {
  return std::string(to_string(t.marks_two_sided)) + " (" + std::string(to_string(t.marks_one_sided)) + ")";
}

constexpr const char* kLegend =
    "Trends in deg C/decade. Marks: * p <= 0.10, ** p <= 0.05, *** p <= 0.01; two-sided (one-sided).";
constexpr const char* kBestEffortNote =
    "best-effort: dataset version metadata absent; results depend on the provider snapshot used.";

}  // namespace

TableRow run_comparison(const ComparisonSpec& spec, const MonthlySeries& satellite, const MonthlySeries* surface) {
  TableRow row;
  row.spec_id = spec.id;
  row.table = spec.table;
  row.satellite = satellite.name();
  row.mode = spec.mode;
  row.start = spec.start;
  row.end = spec.end;
  row.ensemble = spec.ensemble;

  MonthlySeries observed = truncate(satellite, spec.start, spec.end);
  if (spec.mode == CompareMode::lapse) {
    if (!surface) throw Error(Errc::BadSpec, "lapse comparison '" + spec.id + "' needs a surface series");
    row.surface = surface->name();
    observed = difference(truncate(*surface, spec.start, spec.end), observed);
  }

  const TrendFit f = fit(observed);
  row.observed_trend = f.slope_per_decade;
  row.observed_se = f.se_slope;
  row.r1 = f.r1;
  row.n_eff = f.n_eff;
  row.n = f.n;
  row.test = compare(spec.ensemble, f, Sided::two);
  return row;
}

TableRow run_comparison(const ComparisonSpec& spec, const Registry& registry) {
  try {
    const auto& sat_entry = registry.dataset(spec.satellite_id);
    const auto sat = read_series(sat_entry.path, sat_entry.id);
    bool best_effort = sat_entry.version.empty();
    TableRow row;
    if (spec.surface_id) {
      const auto& sfc_entry = registry.dataset(*spec.surface_id);
      const auto sfc = read_series(sfc_entry.path, sfc_entry.id);
      best_effort = best_effort || sfc_entry.version.empty();
      row = run_comparison(spec, sat, &sfc);
    } else {
      row = run_comparison(spec, sat);
    }
    row.best_effort = best_effort;
    return row;
  } catch (const Error& e) {
    throw e.with_context("comparison '" + spec.id + "'");
  }
}

std::vector<TableRow> run_comparisons(const Registry& registry, std::span<const std::string> ids, unsigned threads) {
  std::vector<const ComparisonSpec*> specs;
  if (ids.empty()) {
    for (const auto& c : registry.comparisons) specs.push_back(&c);
  } else {
    for (const auto& id : ids) specs.push_back(&registry.comparison(id));
  }

  // Load every referenced dataset once, up front and single-threaded.
  std::map<std::string, MonthlySeries, std::less<>> cache;
  auto load = [&](const std::string& id, const std::string& spec_id) {
    if (cache.contains(id)) return;
    try {
      const auto& entry = registry.dataset(id);
      cache.emplace(id, read_series(entry.path, entry.id));
    } catch (const Error& e) {
      throw e.with_context("comparison '" + spec_id + "'");
    }
  };
  for (const auto* s : specs) {
    load(s->satellite_id, s->id);
    if (s->surface_id) load(*s->surface_id, s->id);
  }

  std::vector<TableRow> rows(specs.size());
  mc::parallel_for(specs.size(), threads, [&](std::size_t i) {
    const auto& spec = *specs[i];
    try {
      const auto& sat = cache.at(spec.satellite_id);
      const MonthlySeries* sfc = spec.surface_id ? &cache.at(*spec.surface_id) : nullptr;
      rows[i] = run_comparison(spec, sat, sfc);
      rows[i].best_effort = registry.dataset(spec.satellite_id).version.empty() ||
                            (spec.surface_id && registry.dataset(*spec.surface_id).version.empty());
    } catch (const Error& e) {
      throw e.with_context("comparison '" + spec.id + "'");
    }
  });
  return rows;
}

std::string render(std::span<const TableRow> rows, Style style) {
  std::ostringstream out;
  const bool any_best_effort =
      std::any_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.best_effort; });

  if (style == Style::csv) {
    out << "table,spec,surface,satellite,mode,start,end,ensemble_trend,ensemble_sd,n_models,observed_trend,"
           "observed_se,r1,n_eff,n,df,d1_star,percentile,p_two_sided,p_one_sided,marks_two_sided,"
           "marks_one_sided,best_effort\n";
    for (const auto& r : rows) {
      out << csv_field(r.table) << ',' << csv_field(r.spec_id) << ',' << csv_field(r.surface.value_or("")) << ','
          << csv_field(r.satellite) << ',' << to_string(r.mode) << ',' << to_string(r.start) << ','
          << to_string(r.end) << ',' << shortest(r.ensemble.trend) << ',' << shortest(r.ensemble.inter_model_sd)
          << ',' << r.ensemble.n_models << ',' << shortest(r.observed_trend) << ',' << shortest(r.observed_se)
          << ',' << shortest(r.r1) << ',' << shortest(r.n_eff) << ',' << r.n << ',' << shortest(r.test.df) << ','
          << shortest(r.test.d1_star) << ',' << shortest(r.test.percentile) << ','
          << shortest(r.test.p_two_sided) << ',' << shortest(r.test.p_one_sided) << ','
          << to_string(r.test.marks_two_sided) << ',' << to_string(r.test.marks_one_sided) << ','
          << (r.best_effort ? "true" : "false") << '\n';
    }
    out << "# " << kLegend << '\n';
    if (any_best_effort) out << "# " << kBestEffortNote << '\n';
    return out.str();
  }

  const std::vector<std::string> header{"Table",    "Surface",  "Satellite", "Window", "Ensemble",
                                        "Observed", "d1*",      "Pct",       "Significance", "Note"};
  // Right-aligned numeric columns.
  const std::vector<bool> numeric{false, false, false, false, true, true, true, true, false, false};

  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.table.empty() ? "-" : r.table, r.surface.value_or("-"), r.satellite, window_label(r),
                     fixed(r.ensemble.trend, 3), fixed(r.observed_trend, 3), fixed(r.test.d1_star, 2),
                     "(" + fixed(r.test.percentile, 1) + ")", marks_label(r.test),
                     r.best_effort ? "best-effort" : ""});
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }

  auto emit = [&](const std::vector<std::string>& line) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      const std::size_t pad = width[c] - line[c].size();
      if (c > 0) text += "  ";
      if (numeric[c]) {
        text.append(pad, ' ');
        text += line[c];
      } else {
        text += line[c];
        text.append(pad, ' ');
      }
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };

  emit(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : cells) emit(row);
  out << '\n' << kLegend << '\n';
  if (any_best_effort) out << kBestEffortNote << '\n';
  return out.str();
}

}  // namespace trendsig
