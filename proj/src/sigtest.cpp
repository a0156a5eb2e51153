#include "trendsig/sigtest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "trendsig/error.hpp"

namespace trendsig {

void EnsembleStats::validate() const {
  if (!std::isfinite(trend)) throw Error(Errc::MissingEnsembleField, "ensemble trend is not finite");
  if (!std::isfinite(inter_model_sd) || inter_model_sd < 0.0) {
    throw Error(Errc::MissingEnsembleField, "ensemble inter-model sd must be finite and >= 0");
  }
  if (n_models < 1) throw Error(Errc::MissingEnsembleField, "ensemble n_models must be >= 1");
}

std::string_view to_string(Marks m) {
  switch (m) {
    case Marks::none: return "-";
    case Marks::p10: return "*";
    case Marks::p05: return "**";
    case Marks::p01: return "***";
  }
  return "-";
}

Marks marks_for(double p) {
  if (p <= 0.01) return Marks::p01;
  if (p <= 0.05) return Marks::p05;
  if (p <= 0.10) return Marks::p10;
  return Marks::none;
}

double d1_star(const EnsembleStats& ens, double obs_trend, double obs_se) {
  ens.validate();
  if (!std::isfinite(obs_trend) || !std::isfinite(obs_se)) {
    throw Error(Errc::NonFiniteInput, "observed trend and se must be finite");
  }
  const double var = ens.inter_model_sd * ens.inter_model_sd / ens.n_models + obs_se * obs_se;
  if (!(var > 0.0)) throw Error(Errc::ZeroDenominator, "d1*: ensemble spread and observed se are both zero");
  return (ens.trend - obs_trend) / std::sqrt(var);
}

double t_cdf(double x, double df) {
  if (!(df > 0.0) || !std::isfinite(df)) {
    throw Error(Errc::DomainError, "t_cdf: df = " + std::to_string(df) + " must be positive and finite");
  }
  if (!std::isfinite(x)) throw Error(Errc::NonFiniteInput, "t_cdf: x is not finite");
  if (x == 0.0) return 0.5;

  // Lower-tail mass beyond |x|: 0.5 * I_z(df/2, 1/2) with z = df / (df + x^2).
  // For z near 1 switch to the complement to keep full relative accuracy.
  const double x2 = x * x;
  double tail;
  if (df > 2.0 * x2) {
    tail = 0.5 * boost::math::ibetac(0.5, df / 2.0, x2 / (df + x2));
  } else {
    tail = 0.5 * boost::math::ibeta(df / 2.0, 0.5, df / (df + x2));
  }
  return x > 0.0 ? 1.0 - tail : tail;
}

TestResult classify_cdf(double d1, double cdf, double df, Sided sided) {
  if (!(df > 0.0)) throw Error(Errc::DomainError, "classify: df must be positive");
  if (!(cdf >= 0.0 && cdf <= 1.0)) throw Error(Errc::DomainError, "classify: cdf outside [0, 1]");
  TestResult r;
  r.d1_star = d1;
  r.df = df;
  r.sided = sided;
  r.percentile = 100.0 * cdf;
  const double tail = std::min(cdf, 1.0 - cdf);
  r.p_two_sided = 2.0 * tail;
  r.p_one_sided = tail;
  r.marks_two_sided = marks_for(r.p_two_sided);
  r.marks_one_sided = marks_for(r.p_one_sided);
  return r;
}

TestResult classify(double d1, double df, Sided sided) {
  if (!(df > 0.0)) throw Error(Errc::DomainError, "classify: df = " + std::to_string(df) + " must be positive");
  const double tail = t_cdf(-std::abs(d1), df);
  TestResult r = classify_cdf(d1, d1 > 0.0 ? 1.0 - tail : tail, df, sided);
  r.p_two_sided = 2.0 * tail;
  r.p_one_sided = tail;
  r.marks_two_sided = marks_for(r.p_two_sided);
  r.marks_one_sided = marks_for(r.p_one_sided);
  return r;
}

TestResult compare(const EnsembleStats& ens, const TrendFit& obs, Sided sided) {
  const double d1 = d1_star(ens, obs.slope_per_decade, obs.se_slope);
  return classify(d1, obs.df, sided);
}

}  // namespace trendsig
