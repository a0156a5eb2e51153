#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "trendsig/series.hpp"

namespace testsupport {

using trendsig::MonthIndex;
using trendsig::MonthlySeries;
using trendsig::SeriesPoint;

/// value = intercept + slope_per_decade/120 * t over n consecutive months.
inline MonthlySeries line(std::string name, MonthIndex start, int n, double slope_per_decade, double intercept = 0.0) {
  std::vector<SeriesPoint> pts;
  for (int t = 0; t < n; ++t) pts.push_back({start + t, intercept + slope_per_decade / 120.0 * t});
  return MonthlySeries(std::move(name), std::move(pts));
}

inline MonthlySeries from_values(std::string name, MonthIndex start, const std::vector<double>& v) {
  std::vector<SeriesPoint> pts;
  for (std::size_t t = 0; t < v.size(); ++t) pts.push_back({start + static_cast<int>(t), v[t]});
  return MonthlySeries(std::move(name), std::move(pts));
}

/// Gaussian white noise plus a linear trend.
inline MonthlySeries noisy_line(std::string name, MonthIndex start, int n, double slope_per_decade, double sigma,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<SeriesPoint> pts;
  for (int t = 0; t < n; ++t) pts.push_back({start + t, slope_per_decade / 120.0 * t + noise(rng)});
  return MonthlySeries(std::move(name), std::move(pts));
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("trendsig-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& contents) const {
    auto p = path_ / name;
    std::ofstream(p) << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport
