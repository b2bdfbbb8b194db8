#pragma once

#include <stdexcept>
#include <string>

namespace divapport {

enum class ErrorCode {
  invalid_argument,
  invalid_instance,
  inconsistent_rank,
  instance_too_large,
  estimator_unavailable,
  rank_out_of_range,
  mismatch_detected,
  empty_selection,
  io_failure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::invalid_instance: return "InvalidInstance";
    case ErrorCode::inconsistent_rank: return "InconsistentRank";
    case ErrorCode::instance_too_large: return "InstanceTooLarge";
    case ErrorCode::estimator_unavailable: return "EstimatorUnavailable";
    case ErrorCode::rank_out_of_range: return "RankOutOfRange";
    case ErrorCode::mismatch_detected: return "MismatchDetected";
    case ErrorCode::empty_selection: return "EmptySelection";
    case ErrorCode::io_failure: return "IoFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace divapport
