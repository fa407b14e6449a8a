#include "necrobifurc/errors.hpp"

namespace necrobifurc {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::InconclusiveResolution: return "InconclusiveResolution";
    case ErrorCode::Misuse: return "Misuse";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Unknown";
}

void throw_error(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

}  // namespace necrobifurc
