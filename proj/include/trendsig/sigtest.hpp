#pragma once

#include <string_view>

#include "trendsig/trend.hpp"

namespace trendsig {

/// Reference model-ensemble trend statistics, deg C/decade.
struct EnsembleStats {
  double trend = 0.0;           // ensemble-mean trend
  double inter_model_sd = 0.0;  // inter-model SD of ensemble-mean trends
  int n_models = 1;

  /// Throws Error(MissingEnsembleField) on a negative/non-finite spread,
  /// non-finite trend or n_models < 1.
  void validate() const;
};

enum class Sided { one, two };

/// Significance marks: none ("-"), 10% ("*"), 5% ("**"), 1% ("***").
enum class Marks { none, p10, p05, p01 };

std::string_view to_string(Marks m);

/// *** iff p <= 0.01, ** iff p <= 0.05, * iff p <= 0.10, else none.
/// Thresholds are inclusive.
Marks marks_for(double p);

struct TestResult {
  double d1_star = 0.0;
  double df = 0.0;
  double percentile = 50.0;  // 100 * T_df(d1_star)
  double p_two_sided = 1.0;
  double p_one_sided = 0.5;  // in the direction of the observed difference
  Marks marks_two_sided = Marks::none;
  Marks marks_one_sided = Marks::none;
  Sided sided = Sided::two;

  double p_value() const { return sided == Sided::two ? p_two_sided : p_one_sided; }
  Marks marks() const { return sided == Sided::two ? marks_two_sided : marks_one_sided; }
  bool rejects(double alpha) const { return p_value() <= alpha; }
};

/// (ens.trend - obs_trend) / sqrt(ens.inter_model_sd^2 / ens.n_models + obs_se^2)
///
/// Throws Error(ZeroDenominator) when both spread terms vanish.
double d1_star(const EnsembleStats& ens, double obs_trend, double obs_se);

/// Student-t CDF, computed from the regularized incomplete beta function.
/// Throws Error(DomainError) for df <= 0 and Error(NonFiniteInput) for
/// non-finite x.
double t_cdf(double x, double df);

/// Student-t classification of a statistic. Throws Error(DomainError) for df <= 0.
TestResult classify(double d1, double df, Sided sided = Sided::two);

/// Classification from an already computed CDF value (cdf in [0, 1]).
/// Used to re-derive marks from tabulated percentiles.
TestResult classify_cdf(double d1, double cdf, double df, Sided sided = Sided::two);

/// d1_star + classify with df = obs.df.
TestResult compare(const EnsembleStats& ens, const TrendFit& obs, Sided sided = Sided::two);

}  // namespace trendsig
