#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trendsig {

/// A calendar month. Ordered by the ordinal 12*year + month.
class MonthIndex {
 public:
  /// Throws Error(MonthOutOfRange) unless 1 <= month <= 12.
  MonthIndex(int year, int month);

  static MonthIndex from_ordinal(int ordinal);

  /// Parses "YYYY:MM" (also accepts "YYYY-MM"). Throws Error(ParseError).
  static MonthIndex parse(std::string_view text);

  int year() const noexcept { return year_; }
  int month() const noexcept { return month_; }
  int ordinal() const noexcept { return 12 * year_ + month_; }

  MonthIndex operator+(int months) const { return from_ordinal(ordinal() + months); }

  friend bool operator==(const MonthIndex&, const MonthIndex&) = default;
  friend std::strong_ordering operator<=>(const MonthIndex& a, const MonthIndex& b) {
    return a.ordinal() <=> b.ordinal();
  }

 private:
  int year_;
  int month_;
};

/// "YYYY:MM"
std::string to_string(MonthIndex m);

/// Number of calendar months from `from` to `to` (can be negative).
inline int months_between(MonthIndex from, MonthIndex to) { return to.ordinal() - from.ordinal(); }

struct SeriesPoint {
  MonthIndex month;
  double value;  // deg C anomaly

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// Monthly anomaly series with strictly increasing months. Missing months
/// are simply absent. Immutable once built.
class MonthlySeries {
 public:
  MonthlySeries() = default;
  /// Throws Error(DuplicateMonth) on a repeated month and
  /// Error(UnorderedSeries) if months are not increasing.
  MonthlySeries(std::string name, std::vector<SeriesPoint> points);

  const std::string& name() const noexcept { return name_; }
  std::span<const SeriesPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  const SeriesPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  MonthIndex first_month() const;
  MonthIndex last_month() const;

  std::vector<double> values() const;

  MonthlySeries renamed(std::string name) const { return MonthlySeries(std::move(name), points_); }

  friend bool operator==(const MonthlySeries&, const MonthlySeries&) = default;

 private:
  std::string name_;
  std::vector<SeriesPoint> points_;
};

/// Points of `s` with start <= month <= end. Throws Error(BadWindow) if start > end.
MonthlySeries truncate(const MonthlySeries& s, MonthIndex start, MonthIndex end);

/// Restricts both series to their common months.
std::pair<MonthlySeries, MonthlySeries> align(const MonthlySeries& a, const MonthlySeries& b);

/// surface - troposphere on common months, named "<surface>-minus-<troposphere>".
MonthlySeries difference(const MonthlySeries& surface, const MonthlySeries& troposphere);

}  // namespace trendsig
