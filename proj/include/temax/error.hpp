#pragma once

#include <stdexcept>
#include <string>

namespace temax {

enum class ErrorCode {
  invalid_argument = 1,
  invalid_media,
  branch_degeneracy,
  degenerate_symbol,
  undefined_ratio,
  contour_through_zero,
  refine_failure,
  discretization,
  degenerate_contrast,
  sweep_divergence,
  decay_violation,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Exception carrying one of the error kinds the toolkit reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace temax
