#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trendsig/series.hpp"

namespace trendsig {

inline constexpr double kMonthsPerDecade = 120.0;

/// OLS trend of a monthly series with a lag-1 autocorrelation adjustment of
/// the slope standard error.
///
/// The regressor is the calendar month position measured from `origin`
/// (the first month of the fitted series), so a missing month leaves a hole
/// in the regressor rather than shifting later points. `intercept` is the
/// fitted value at `origin`.
struct TrendFit {
  double slope_per_month = 0.0;   // deg C / month
  double slope_per_decade = 0.0;  // deg C / decade
  double intercept = 0.0;         // deg C at origin
  MonthIndex origin{1970, 1};
  std::size_t n = 0;
  std::vector<double> residuals;  // input order
  double r1 = 0.0;                // lag-1 autocorrelation of residuals
  double n_eff = 0.0;             // effective sample size, clamped to n
  double se_slope = 0.0;          // deg C / decade, AR1-adjusted
  double df = 0.0;                // n_eff - 2

  /// Classical OLS standard error (divisor n - 2), deg C / decade.
  double se_slope_ols = 0.0;
};

/// Plain least-squares line, the first stage of fit().
struct OlsLine {
  double slope_per_month = 0.0;
  double intercept = 0.0;  // value at origin
  MonthIndex origin{1970, 1};
  double sxx = 0.0;  // sum (x - xbar)^2 over month positions
  std::vector<double> residuals;
};

/// Throws Error with TooFewPoints (n < 3), NonFiniteInput or DegenerateDesign.
/// Residuals at rounding level (an exact line) are returned as zeros.
OlsLine ols(const MonthlySeries& s);

/// Fits value on month position.
///
/// The residual variance uses the divisor (n_eff - 2) with
/// n_eff = n (1 - r1) / (1 + r1), while the design sum of squares uses every
/// actual point:
///
///   se^2 = [sum e^2 / (n_eff - 2)] / sum (x - xbar)^2
///
/// Throws Error with TooFewPoints (n < 3), DegenerateDesign, NonFiniteInput
/// or EffectiveDfTooSmall (n_eff <= 2).
TrendFit fit(const MonthlySeries& s);

/// r1 = sum (e_t - ebar)(e_{t+1} - ebar) / sum (e_t - ebar)^2 over the
/// sequence as given (calendar gaps are ignored). Returns 0 for constant
/// input. Throws Error(TooFewPoints) for fewer than two values.
double lag1_autocorr(std::span<const double> e);

/// n (1 - r1) / (1 + r1), clamped to at most n. Throws Error(DomainError)
/// unless -1 < r1 < 1 and n >= 1.
double effective_n(std::size_t n, double r1);

}  // namespace trendsig
