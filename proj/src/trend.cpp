#include "trendsig/trend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trendsig/error.hpp"

namespace trendsig {

namespace {
constexpr double kExactFitUlps = 256.0;
}  // namespace

double lag1_autocorr(std::span<const double> e) {
  if (e.size() < 2) throw Error(Errc::TooFewPoints, "lag-1 autocorrelation needs at least 2 values");
  double mean = 0.0;
  for (double v : e) mean += v;
  mean /= static_cast<double>(e.size());

  double num = 0.0;
  double den = 0.0;
  for (std::size_t t = 0; t < e.size(); ++t) {
    const double d = e[t] - mean;
    den += d * d;
    if (t + 1 < e.size()) num += d * (e[t + 1] - mean);
  }
  if (den == 0.0) return 0.0;
  return num / den;
}

double effective_n(std::size_t n, double r1) {
  if (n < 1) throw Error(Errc::DomainError, "effective_n: n must be >= 1");
  if (!(r1 > -1.0 && r1 < 1.0)) {
    throw Error(Errc::DomainError, "effective_n: r1 = " + std::to_string(r1) + " outside (-1, 1)");
  }
  const double nd = static_cast<double>(n);
  return std::min(nd, nd * (1.0 - r1) / (1.0 + r1));
}

OlsLine ols(const MonthlySeries& s) {
  const std::size_t n = s.size();
  if (n < 3) {
    throw Error(Errc::TooFewPoints,
                "series '" + s.name() + "' has " + std::to_string(n) + " points, need at least 3");
  }
  for (const auto& p : s) {
    if (!std::isfinite(p.value)) {
      throw Error(Errc::NonFiniteInput, "series '" + s.name() + "' has a non-finite value at " +
                                            to_string(p.month));
    }
  }

  OlsLine line;
  line.origin = s.first_month();
  const double nd = static_cast<double>(n);

  std::vector<double> x(n);
  double xbar = 0.0;
  double ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(months_between(line.origin, s[i].month));
    xbar += x[i];
    ybar += s[i].value;
  }
  xbar /= nd;
  ybar /= nd;

  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xbar;
    line.sxx += dx * dx;
    sxy += dx * (s[i].value - ybar);
  }
  // Strictly increasing months make this unreachable through MonthlySeries.
  if (line.sxx <= 0.0) throw Error(Errc::DegenerateDesign, "series '" + s.name() + "': all months equal");

  line.slope_per_month = sxy / line.sxx;
  line.intercept = ybar - line.slope_per_month * xbar;

  line.residuals.resize(n);
  double scale = 0.0;
  double max_resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    line.residuals[i] = s[i].value - (line.intercept + line.slope_per_month * x[i]);
    scale = std::max(scale, std::abs(s[i].value));
    max_resid = std::max(max_resid, std::abs(line.residuals[i]));
  }
  // Exact fit: residuals at rounding level carry no autocorrelation signal.
  if (max_resid <= kExactFitUlps * std::numeric_limits<double>::epsilon() * scale) {
    std::fill(line.residuals.begin(), line.residuals.end(), 0.0);
  }
  return line;
}

TrendFit fit(const MonthlySeries& s) {
  OlsLine line = ols(s);

  TrendFit f;
  f.n = s.size();
  f.origin = line.origin;
  f.slope_per_month = line.slope_per_month;
  f.slope_per_decade = kMonthsPerDecade * line.slope_per_month;
  f.intercept = line.intercept;
  f.residuals = std::move(line.residuals);

  double sse = 0.0;
  for (double e : f.residuals) sse += e * e;

  f.r1 = lag1_autocorr(f.residuals);
  f.n_eff = effective_n(f.n, f.r1);
  if (f.n_eff <= 2.0) {
    throw Error(Errc::EffectiveDfTooSmall, "series '" + s.name() + "': effective sample size " +
                                               std::to_string(f.n_eff) + " leaves no residual df");
  }
  f.df = f.n_eff - 2.0;
  f.se_slope = kMonthsPerDecade * std::sqrt(sse / f.df / line.sxx);
  f.se_slope_ols = kMonthsPerDecade * std::sqrt(sse / (static_cast<double>(f.n) - 2.0) / line.sxx);
  return f;
}

}  // namespace trendsig
