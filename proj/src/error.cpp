#include "trendsig/error.hpp"

namespace trendsig {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::DegenerateDesign: return "DegenerateDesign";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::EffectiveDfTooSmall: return "EffectiveDfTooSmall";
    case Errc::DomainError: return "DomainError";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateMonth: return "DuplicateMonth";
    case Errc::UnorderedSeries: return "UnorderedSeries";
    case Errc::MonthOutOfRange: return "MonthOutOfRange";
    case Errc::UnknownDatasetId: return "UnknownDatasetId";
    case Errc::MissingEnsembleField: return "MissingEnsembleField";
    case Errc::BadWindow: return "BadWindow";
    case Errc::BadSpec: return "BadSpec";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_input_error(Errc code) {
  switch (code) {
    case Errc::TooFewPoints:
    case Errc::DegenerateDesign:
    case Errc::NonFiniteInput:
    case Errc::EffectiveDfTooSmall:
    case Errc::DomainError:
    case Errc::ZeroDenominator:
      return false;
    default:
      return true;
  }
}

Error::Error(Errc code, const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      code_(code),
      line_(line) {}

Error::Error(Errc code, std::size_t line, const std::string& what_text)
    : std::runtime_error(what_text), code_(code), line_(line) {}

Error Error::with_context(const std::string& context) const {
  return Error(code_, line_, context + ": " + what());
}

}  // namespace trendsig
