#include "trendsig/series.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "trendsig/error.hpp"

namespace trendsig {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

MonthIndex::MonthIndex(int year, int month) : year_(year), month_(month) {
  if (month < 1 || month > 12) {
    throw Error(Errc::MonthOutOfRange, "month " + std::to_string(month) + " outside 1..12");
  }
}

MonthIndex MonthIndex::from_ordinal(int ordinal) {
  int year = floor_div(ordinal - 1, 12);
  return MonthIndex(year, ordinal - 12 * year);
}

MonthIndex MonthIndex::parse(std::string_view text) {
  auto sep = text.find_first_of(":-", 1);
  int year = 0;
  int month = 0;
  if (sep == std::string_view::npos || !parse_int(text.substr(0, sep), year) ||
      !parse_int(text.substr(sep + 1), month)) {
    throw Error(Errc::ParseError, "expected YYYY:MM, got '" + std::string(text) + "'");
  }
  return MonthIndex(year, month);
}

std::string to_string(MonthIndex m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d:%02d", m.year(), m.month());
  return buf;
}

MonthlySeries::MonthlySeries(std::string name, std::vector<SeriesPoint> points)
    : name_(std::move(name)), points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].month == points_[i - 1].month) {
      throw Error(Errc::DuplicateMonth,
                  "series '" + name_ + "': duplicate month " + to_string(points_[i].month));
    }
    if (points_[i].month < points_[i - 1].month) {
      throw Error(Errc::UnorderedSeries,
                  "series '" + name_ + "': month " + to_string(points_[i].month) +
                      " follows " + to_string(points_[i - 1].month));
    }
  }
}

MonthIndex MonthlySeries::first_month() const {
  if (points_.empty()) throw Error(Errc::TooFewPoints, "series '" + name_ + "' is empty");
  return points_.front().month;
}

MonthIndex MonthlySeries::last_month() const {
  if (points_.empty()) throw Error(Errc::TooFewPoints, "series '" + name_ + "' is empty");
  return points_.back().month;
}

std::vector<double> MonthlySeries::values() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.value);
  return out;
}

MonthlySeries truncate(const MonthlySeries& s, MonthIndex start, MonthIndex end) {
  if (end < start) {
    throw Error(Errc::BadWindow, "window start " + to_string(start) + " after end " + to_string(end));
  }
  auto pts = s.points();
  auto lo = std::lower_bound(pts.begin(), pts.end(), start,
                             [](const SeriesPoint& p, MonthIndex m) { return p.month < m; });
  auto hi = std::upper_bound(lo, pts.end(), end,
                             [](MonthIndex m, const SeriesPoint& p) { return m < p.month; });
  return MonthlySeries(s.name(), std::vector<SeriesPoint>(lo, hi));
}

std::pair<MonthlySeries, MonthlySeries> align(const MonthlySeries& a, const MonthlySeries& b) {
  std::vector<SeriesPoint> out_a;
  std::vector<SeriesPoint> out_b;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->month < ib->month) {
      ++ia;
    } else if (ib->month < ia->month) {
      ++ib;
    } else {
      out_a.push_back(*ia++);
      out_b.push_back(*ib++);
    }
  }
  return {MonthlySeries(a.name(), std::move(out_a)), MonthlySeries(b.name(), std::move(out_b))};
}

MonthlySeries difference(const MonthlySeries& surface, const MonthlySeries& troposphere) {
  auto [s, t] = align(surface, troposphere);
  std::vector<SeriesPoint> pts;
  pts.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    pts.push_back({s[i].month, s[i].value - t[i].value});
  }
  return MonthlySeries(surface.name() + "-minus-" + troposphere.name(), std::move(pts));
}

}  // namespace trendsig
