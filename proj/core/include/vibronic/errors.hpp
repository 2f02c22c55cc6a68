#pragma once

#include <stdexcept>
#include <string>

namespace vibronic {

enum class ErrorCode {
  invalid_dimension,
  truncation_unsafe,
  invalid_state,
  invalid_argument,
  series_truncation,
  rabi_null,
  schedule_infeasible,
  insufficient_coverage,
  grid_mismatch,
  config_parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// command-line layer can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vibronic
