#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trendsig/ingest.hpp"
#include "trendsig/sigtest.hpp"

namespace trendsig {

/// One line of a model-versus-observation comparison table.
struct TableRow {
  std::string spec_id;
  std::string table;
  std::optional<std::string> surface;
  std::string satellite;
  CompareMode mode = CompareMode::trend;
  MonthIndex start{1979, 1};
  MonthIndex end{1979, 1};
  EnsembleStats ensemble;

  double observed_trend = 0.0;  // deg C/decade, full precision
  double observed_se = 0.0;     // deg C/decade
  double r1 = 0.0;
  double n_eff = 0.0;
  std::size_t n = 0;
  TestResult test;

  /// Set when a referenced dataset carries no version metadata, so the row
  /// cannot claim to reproduce a specific provider snapshot.
  bool best_effort = false;
};

/// Core comparison on already loaded series. `surface` must be given in
/// lapse mode; labels are taken from the series names.
TableRow run_comparison(const ComparisonSpec& spec, const MonthlySeries& satellite,
                        const MonthlySeries* surface = nullptr);

/// Loads the referenced series and runs the comparison. Errors are rethrown
/// with the comparison id prepended.
TableRow run_comparison(const ComparisonSpec& spec, const Registry& registry);

/// Runs the listed comparisons (all of them when `ids` is empty), in
/// registry order, loading each dataset once.
std::vector<TableRow> run_comparisons(const Registry& registry, std::span<const std::string> ids = {},
                                      unsigned threads = 1);

enum class Style { text, csv };

/// Deterministic rendering. Text tables are column aligned with trends to 3
/// decimals, d1* to 2 and percentiles to 1; CSV keeps full precision. Both
/// end with the significance legend.
std::string render(std::span<const TableRow> rows, Style style);

}  // namespace trendsig
