#include "trendsig/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <thread>

#include "trendsig/error.hpp"
#include "trendsig/trend.hpp"

namespace trendsig::mc {

void Ar1Spec::validate() const {
  if (!(std::abs(phi) < 1.0)) throw Error(Errc::DomainError, "AR1 phi must satisfy |phi| < 1");
  if (!(sigma_innov >= 0.0) || !std::isfinite(sigma_innov)) {
    throw Error(Errc::DomainError, "AR1 sigma_innov must be finite and >= 0");
  }
  if (!std::isfinite(trend_per_decade)) throw Error(Errc::DomainError, "AR1 trend must be finite");
  if (n < 3) throw Error(Errc::DomainError, "AR1 series length must be >= 3");
}

MonthlySeries generate(const Ar1Spec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> innov(0.0, 1.0);

  const double per_month = spec.trend_per_decade / 120.0;
  const double stationary_sd = spec.sigma_innov / std::sqrt(1.0 - spec.phi * spec.phi);

  std::vector<SeriesPoint> pts;
  pts.reserve(spec.n);
  double e = stationary_sd * innov(rng);
  for (std::size_t t = 0; t < spec.n; ++t) {
    if (t > 0) e = spec.phi * e + spec.sigma_innov * innov(rng);
    pts.push_back({spec.start + static_cast<int>(t), per_month * static_cast<double>(t) + e});
  }
  return MonthlySeries("ar1", std::move(pts));
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t rep) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (rep + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t reps, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(reps, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < reps; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  std::mutex failure_mutex;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < reps && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          failed = true;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

Calibration calibrate_se(const Ar1Spec& spec, std::size_t reps, unsigned threads) {
  spec.validate();
  if (reps < 2) throw Error(Errc::DomainError, "calibration needs at least 2 replicates");
  std::vector<TrendFit> fits(reps);
  parallel_for(reps, threads, [&](std::size_t rep) {
    Ar1Spec s = spec;
    s.seed = replicate_seed(spec.seed, rep);
    fits[rep] = fit(generate(s));
    fits[rep].residuals.clear();
  });

  Calibration c;
  c.reps = reps;
  const double r = static_cast<double>(reps);
  for (const auto& f : fits) {
    c.mean_slope += f.slope_per_decade;
    c.mean_se2 += f.se_slope * f.se_slope;
    c.mean_se += f.se_slope;
    c.mean_r1 += f.r1;
    c.mean_n_eff += f.n_eff;
  }
  c.mean_slope /= r;
  c.mean_se2 /= r;
  c.mean_se /= r;
  c.mean_r1 /= r;
  c.mean_n_eff /= r;
  for (const auto& f : fits) {
    const double d = f.slope_per_decade - c.mean_slope;
    c.slope_variance += d * d;
  }
  c.slope_variance /= (r - 1.0);
  return c;
}

namespace {

// 1 = rejected, 0 = not rejected, 2 = fit failed.
std::vector<unsigned char> decide(const Ar1Spec& spec, const EnsembleStats& ens, std::size_t reps, double alpha,
                                  unsigned threads) {
  std::vector<unsigned char> out(reps, 0);
  parallel_for(reps, threads, [&](std::size_t rep) {
    Ar1Spec s = spec;
    s.seed = replicate_seed(spec.seed, rep);
    try {
      const auto result = compare(ens, fit(generate(s)), Sided::two);
      out[rep] = result.rejects(alpha) ? 1 : 0;
    } catch (const Error&) {
      out[rep] = 2;
    }
  });
  return out;
}

void check_run(std::size_t reps, double alpha) {
  if (reps < 1000) throw Error(Errc::DomainError, "size/power runs need at least 1000 replicates");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::DomainError, "alpha must lie in (0, 1)");
}

}  // namespace

std::vector<bool> rejections(const Ar1Spec& spec, const EnsembleStats& ens, std::size_t reps, double alpha,
                             unsigned threads) {
  spec.validate();
  ens.validate();
  const auto d = decide(spec, ens, reps, alpha, threads);
  std::vector<bool> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] == 1;
  return out;
}

SizePower size_power(const Ar1Spec& null_spec, const EnsembleStats& ens, std::size_t reps, double alpha,
                     std::span<const double> trend_gaps, unsigned threads) {
  null_spec.validate();
  ens.validate();
  check_run(reps, alpha);

  auto rate = [&](double gap, std::size_t* failed) {
    Ar1Spec s = null_spec;
    s.trend_per_decade = ens.trend + gap;
    const auto d = decide(s, ens, reps, alpha, threads);
    std::size_t rejected = 0;
    for (auto v : d) {
      if (v == 1) ++rejected;
      if (v == 2 && failed) ++*failed;
    }
    return static_cast<double>(rejected) / static_cast<double>(reps);
  };

  SizePower out;
  out.reps = reps;
  out.size = rate(0.0, &out.failed);
  for (double gap : trend_gaps) {
    out.power_curve.push_back({gap, rate(gap, nullptr)});
  }
  return out;
}

void write_size_power_csv(std::ostream& out, const Ar1Spec& spec, double alpha, const SizePower& result) {
  out << "phi,n,trend_gap,alpha,rejection_rate,reps,seed\n";
  for (const auto& p : result.power_curve) {
    out << spec.phi << ',' << spec.n << ',' << p.trend_gap << ',' << alpha << ',' << p.rate << ',' << result.reps
        << ',' << spec.seed << '\n';
  }
}

}  // namespace trendsig::mc
