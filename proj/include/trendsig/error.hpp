#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trendsig {

enum class Errc {
  // numerical / domain
  TooFewPoints,
  DegenerateDesign,
  NonFiniteInput,
  EffectiveDfTooSmall,
  DomainError,
  ZeroDenominator,
  // input
  ParseError,
  DuplicateMonth,
  UnorderedSeries,
  MonthOutOfRange,
  UnknownDatasetId,
  MissingEnsembleField,
  BadWindow,
  BadSpec,
  IoError,
};

std::string_view to_string(Errc code);

/// True for malformed files, flags and registry entries; false for failures
/// of the statistics on otherwise valid input.
bool is_input_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::size_t line = 0);

  /// Same error with `context` (a file name, a comparison id) prepended.
  Error with_context(const std::string& context) const;

  Errc code() const noexcept { return code_; }
  /// 1-based source line for parse errors, 0 when not applicable.
  std::size_t line() const noexcept { return line_; }

 private:
  Error(Errc code, std::size_t line, const std::string& what_text);

  Errc code_;
  std::size_t line_;
};

}  // namespace trendsig
