#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace locframe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Stable error taxonomy. The string form is what the CLI emits in its
/// error JSON, so existing names must not change.
enum class ErrorCode {
  dimension_mismatch,
  invalid_argument,
  insufficient_data,
  not_a_frame,
  not_norm_bounded,
  duality_check_failed,
  precondition_failed,
  bijectivity,
  contract,
  unsupported_case,
  io,
  numerical_divergence,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::not_a_frame: return "not_a_frame";
    case ErrorCode::not_norm_bounded: return "not_norm_bounded";
    case ErrorCode::duality_check_failed: return "duality_check_failed";
    case ErrorCode::precondition_failed: return "precondition_failed";
    case ErrorCode::bijectivity: return "bijectivity";
    case ErrorCode::contract: return "contract";
    case ErrorCode::unsupported_case: return "unsupported_case";
    case ErrorCode::io: return "io";
    case ErrorCode::numerical_divergence: return "numerical_divergence";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a family of vectors fails to span; carries the numerical rank.
class NotAFrameError : public Error {
 public:
  NotAFrameError(const std::string& what, long rank)
      : Error(ErrorCode::not_a_frame, what), rank_(rank) {}

  long rank() const noexcept { return rank_; }

 private:
  long rank_;
};

/// Relative singular-value cutoff shared by every pseudo-inverse in the library.
inline constexpr double kDefaultRankTol = 1e-10;

}  // namespace locframe
