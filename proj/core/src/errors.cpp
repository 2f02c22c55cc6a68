#include "vibronic/errors.hpp"

namespace vibronic {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::truncation_unsafe: return "truncation-unsafe";
    case ErrorCode::invalid_state: return "invalid-state";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::series_truncation: return "series-truncation-error";
    case ErrorCode::rabi_null: return "rabi-null";
    case ErrorCode::schedule_infeasible: return "schedule-infeasible";
    case ErrorCode::insufficient_coverage: return "insufficient-coverage";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::config_parse: return "config-parse";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace vibronic
