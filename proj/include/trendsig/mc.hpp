#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "trendsig/series.hpp"
#include "trendsig/sigtest.hpp"

namespace trendsig::mc {

/// y_t = trend * t + e_t,  e_t = phi * e_{t-1} + eps_t,  eps_t ~ N(0, sigma_innov^2),
/// with e_0 drawn from the stationary law N(0, sigma_innov^2 / (1 - phi^2)).
struct Ar1Spec {
  double phi = 0.0;
  double sigma_innov = 0.1;       // deg C
  double trend_per_decade = 0.0;  // deg C / decade
  std::size_t n = 360;            // months
  std::uint64_t seed = 1;
  MonthIndex start{1979, 1};

  /// Throws Error(DomainError) unless |phi| < 1, sigma_innov >= 0, n >= 3.
  void validate() const;
};

/// Deterministic in `spec.seed`. A series of length n is a prefix of the
/// series of length n' > n generated with the same seed.
MonthlySeries generate(const Ar1Spec& spec);

/// Seed of replicate `rep` derived from a base seed (splitmix64 mixing), so a
/// replicate's draws depend only on (seed, rep).
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t rep);

/// Runs body(rep) for rep in [0, reps) on `threads` workers (0 = hardware
/// concurrency). Each rep runs exactly once; results must be written to
/// rep-indexed storage so the outcome is independent of scheduling.
void parallel_for(std::size_t reps, unsigned threads, const std::function<void(std::size_t)>& body);

struct Calibration {
  std::size_t reps = 0;
  double mean_slope = 0.0;      // deg C / decade
  double slope_variance = 0.0;  // empirical variance of fitted slopes
  double mean_se2 = 0.0;        // mean of se_slope^2
  double mean_se = 0.0;
  double mean_r1 = 0.0;
  double mean_n_eff = 0.0;

  /// mean_se2 / slope_variance - 1
  double se2_relative_error() const { return mean_se2 / slope_variance - 1.0; }
};

/// Fits `reps` independent replicates of `spec` and compares the reported
/// AR1-adjusted se^2 with the empirical variance of the slope estimates.
Calibration calibrate_se(const Ar1Spec& spec, std::size_t reps, unsigned threads = 0);

struct PowerPoint {
  double trend_gap = 0.0;  // generated trend minus ensemble trend, deg C/decade
  double rate = 0.0;
};

struct SizePower {
  double size = 0.0;
  std::vector<PowerPoint> power_curve;
  std::size_t reps = 0;
  std::size_t failed = 0;  // replicate fits that raised (counted as non-rejections)
};

/// Rejection rates of the two-sided d1* test at level `alpha` over the full
/// fit -> compare pipeline. Size uses trend = ens.trend; each power entry
/// uses trend = ens.trend + gap. Every configuration reuses the same
/// replicate seeds, so a gap of 0 reproduces `size` exactly. The trend of
/// `null_spec` is ignored. Throws Error(DomainError) if reps < 1000 or
/// alpha is outside (0, 1).
SizePower size_power(const Ar1Spec& null_spec, const EnsembleStats& ens, std::size_t reps, double alpha,
                     std::span<const double> trend_gaps, unsigned threads = 0);

/// Per-replicate two-sided rejection decisions for one configuration. Paired
/// comparisons (e.g. two series lengths) use the same seeds.
std::vector<bool> rejections(const Ar1Spec& spec, const EnsembleStats& ens, std::size_t reps, double alpha,
                             unsigned threads = 0);

/// CSV with columns phi,n,trend_gap,alpha,rejection_rate,reps,seed; one row
/// per power-curve entry.
void write_size_power_csv(std::ostream& out, const Ar1Spec& spec, double alpha, const SizePower& result);

}  // namespace trendsig::mc
