// trendsig: trend significance tests of observed monthly series against a
// model-ensemble reference trend.
//
//   trendsig fit <series.csv> [--start YYYY:MM] [--end YYYY:MM]
//   trendsig compare --registry <file> [--spec ID...] [--format text|csv]
//   trendsig lapse <surface.csv> <tropo.csv> --ensemble-trend X --ensemble-sd S --n-models K
//   trendsig simulate --phi P --n N --reps R --alpha A --trend-gaps G1,G2 --seed S
//
// Exit codes: 0 success, 1 input error, 2 numerical/domain error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trendsig/trendsig.hpp"

namespace {

using namespace trendsig;

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct Window {
  std::string start;
  std::string end;

  void add_to(CLI::App* app) {
    app->add_option("--start", start, "First month of the window (YYYY:MM)");
    app->add_option("--end", end, "Last month of the window (YYYY:MM)");
  }

  MonthIndex start_or(MonthIndex fallback) const { return start.empty() ? fallback : MonthIndex::parse(start); }
  MonthIndex end_or(MonthIndex fallback) const { return end.empty() ? fallback : MonthIndex::parse(end); }
};

Style parse_style(const std::string& s) { return s == "csv" ? Style::csv : Style::text; }

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

int run_fit(const std::string& path, const Window& window) {
  const auto series = read_series(path);
  if (series.empty()) throw Error(Errc::TooFewPoints, path + ": no data rows");
  const auto start = window.start_or(series.first_month());
  const auto end = window.end_or(series.last_month());
  const auto f = fit(truncate(series, start, end));

  std::cout << "series    " << series.name() << '\n'
            << "window    " << to_string(start) << '-' << to_string(end) << '\n'
            << "n         " << f.n << '\n'
            << "trend     " << fmt(f.slope_per_decade, 4) << " deg C/decade\n"
            << "se        " << fmt(f.se_slope, 4) << " deg C/decade (AR1-adjusted)\n"
            << "se_ols    " << fmt(f.se_slope_ols, 4) << " deg C/decade\n"
            << "r1        " << fmt(f.r1, 4) << '\n'
            << "n_eff     " << fmt(f.n_eff, 2) << '\n'
            << "df        " << fmt(f.df, 2) << '\n';
  return 0;
}

int run_compare(const std::string& registry_path, const std::vector<std::string>& ids, const std::string& format) {
  const auto registry = read_registry(registry_path);
  const auto rows = run_comparisons(registry, ids);
  std::cout << render(rows, parse_style(format));
  return 0;
}

int run_lapse(const std::string& surface_path, const std::string& tropo_path, const EnsembleStats& ens,
              const Window& window, const std::string& format) {
  const auto surface = read_series(surface_path);
  const auto tropo = read_series(tropo_path);
  const auto [s, t] = align(surface, tropo);
  if (s.empty()) throw Error(Errc::TooFewPoints, "surface and troposphere series share no months");

  ComparisonSpec spec;
  spec.id = "lapse";
  spec.mode = CompareMode::lapse;
  spec.surface_id = surface.name();
  spec.satellite_id = tropo.name();
  spec.ensemble = ens;
  spec.start = window.start_or(s.first_month());
  spec.end = window.end_or(s.last_month());
  if (spec.end < spec.start) throw Error(Errc::BadWindow, "window start after end");
  ens.validate();

  TableRow row = run_comparison(spec, tropo, &surface);
  row.best_effort = true;
  std::cout << render(std::span(&row, 1), parse_style(format));
  return 0;
}

int run_simulate(const mc::Ar1Spec& spec, const EnsembleStats& ens, std::size_t reps, double alpha,
                 std::vector<double> gaps, unsigned threads) {
  if (std::find(gaps.begin(), gaps.end(), 0.0) == gaps.end()) gaps.insert(gaps.begin(), 0.0);
  const auto result = mc::size_power(spec, ens, reps, alpha, gaps, threads);
  mc::write_size_power_csv(std::cout, spec, alpha, result);
  if (result.failed > 0) std::cerr << "warning: " << result.failed << " replicate fits failed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trend significance tests of observed series against a model-ensemble trend"};
  app.require_subcommand(1);

  std::string format = "text";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output style")->check(CLI::IsMember({"text", "csv"}));
  };

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "OLS trend with AR1-adjusted standard error");
  std::string fit_path;
  Window fit_window;
  fit_cmd->add_option("series", fit_path, "Series CSV (year,month,value)")->required();
  fit_window.add_to(fit_cmd);

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Run registered comparisons and render a table");
  std::string registry_path;
  std::vector<std::string> spec_ids;
  compare_cmd->add_option("--registry", registry_path, "Registry file")->required();
  compare_cmd->add_option("--spec", spec_ids, "Comparison ids to run (default: all)");
  add_format(compare_cmd);

  // lapse
  auto* lapse_cmd = app.add_subcommand("lapse", "Test the trend of a surface-minus-troposphere series");
  std::string surface_path;
  std::string tropo_path;
  EnsembleStats lapse_ens;
  Window lapse_window;
  lapse_cmd->add_option("surface", surface_path, "Surface series CSV")->required();
  lapse_cmd->add_option("troposphere", tropo_path, "Troposphere series CSV")->required();
  lapse_cmd->add_option("--ensemble-trend", lapse_ens.trend, "Ensemble lapse trend, deg C/decade")->required();
  lapse_cmd->add_option("--ensemble-sd", lapse_ens.inter_model_sd, "Inter-model SD, deg C/decade")->required();
  lapse_cmd->add_option("--n-models", lapse_ens.n_models, "Number of models")->required();
  lapse_window.add_to(lapse_cmd);
  add_format(lapse_cmd);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo size and power of the d1* test");
  mc::Ar1Spec sim_spec;
  EnsembleStats sim_ens{0.0, 0.0, 19};
  std::size_t reps = 10000;
  double alpha = 0.05;
  std::vector<double> gaps;
  unsigned threads = 0;
  sim_cmd->add_option("--phi", sim_spec.phi, "AR1 coefficient")->required();
  sim_cmd->add_option("--n", sim_spec.n, "Series length in months")->required();
  sim_cmd->add_option("--reps", reps, "Replicates (>= 1000)")->capture_default_str();
  sim_cmd->add_option("--alpha", alpha, "Two-sided test level")->capture_default_str();
  sim_cmd->add_option("--trend-gaps", gaps, "Observed minus ensemble trends, deg C/decade")->delimiter(',');
  sim_cmd->add_option("--seed", sim_spec.seed, "Base seed")->capture_default_str();
  sim_cmd->add_option("--sigma", sim_spec.sigma_innov, "Innovation SD, deg C")->capture_default_str();
  sim_cmd->add_option("--ensemble-trend", sim_ens.trend, "Ensemble trend")->capture_default_str();
  sim_cmd->add_option("--ensemble-sd", sim_ens.inter_model_sd, "Inter-model SD")->capture_default_str();
  sim_cmd->add_option("--n-models", sim_ens.n_models, "Number of models")->capture_default_str();
  sim_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*fit_cmd) return run_fit(fit_path, fit_window);
    if (*compare_cmd) return run_compare(registry_path, spec_ids, format);
    if (*lapse_cmd) return run_lapse(surface_path, tropo_path, lapse_ens, lapse_window, format);
    if (*sim_cmd) return run_simulate(sim_spec, sim_ens, reps, alpha, gaps, threads);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
