#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trendsig/series.hpp"
#include "trendsig/sigtest.hpp"

namespace trendsig {

// ---------------------------------------------------------------------------
// Series CSV: `year,month,value` per line, optional header line (detected by a
// non-numeric first field), "NA" or an empty value marks a missing month.
// Rows may arrive in any order; they are sorted by month.
// ---------------------------------------------------------------------------

/// Throws Error with ParseError, MonthOutOfRange or DuplicateMonth, carrying
/// the 1-based line number.
MonthlySeries parse_series(std::istream& in, std::string name);

/// Series name defaults to the file stem. Throws Error(IoError) if the file
/// cannot be opened.
MonthlySeries read_series(const std::filesystem::path& path, std::optional<std::string> name = {});

/// Writes the header `year,month,value` and one row per point with the
/// shortest round-trip representation of each value.
void write_series(std::ostream& out, const MonthlySeries& s);

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

enum class DatasetKind { satellite, surface_landocean, surface_ocean, surface_land };

std::string_view to_string(DatasetKind k);
std::optional<DatasetKind> parse_dataset_kind(std::string_view text);

struct DatasetEntry {
  std::string id;
  DatasetKind kind = DatasetKind::satellite;
  std::filesystem::path path;  // resolved against the registry directory
  std::string version;         // empty when the provider snapshot is unknown
  std::string notes;
};

enum class CompareMode { trend, lapse };

std::string_view to_string(CompareMode m);

struct ComparisonSpec {
  std::string id;
  std::string table;  // free grouping label, e.g. "Table 2"
  std::optional<std::string> surface_id;
  std::string satellite_id;
  EnsembleStats ensemble;
  MonthIndex start{1979, 1};
  MonthIndex end{1979, 1};
  CompareMode mode = CompareMode::trend;
};

class Registry {
 public:
  std::vector<DatasetEntry> datasets;
  std::vector<ComparisonSpec> comparisons;

  /// Throws Error(UnknownDatasetId).
  const DatasetEntry& dataset(std::string_view id) const;
  /// Throws Error(BadSpec) when no comparison has this id.
  const ComparisonSpec& comparison(std::string_view id) const;
};

/// Parses and validates a registry. Relative dataset paths are resolved
/// against `base_dir`. Validation is schema-only: it never opens series files.
///
/// Throws Error with ParseError, UnknownDatasetId, MissingEnsembleField,
/// BadWindow or BadSpec.
Registry parse_registry(std::istream& in, const std::filesystem::path& base_dir = {});

Registry read_registry(const std::filesystem::path& path);

}  // namespace trendsig
