#pragma once

#include <stdexcept>
#include <string>

namespace necrobifurc {

enum class ErrorCode {
  Domain,
  NoRoot,
  DegenerateDenominator,
  AssumptionViolated,
  InconclusiveResolution,
  Misuse,
  Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Single exception type for the library; the code tells callers (and the C
/// API) which failure class occurred.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void throw_error(ErrorCode code, const std::string& what);

inline void require_domain(bool ok, const std::string& what) {
  if (!ok) throw_error(ErrorCode::Domain, what);
}

}  // namespace necrobifurc
