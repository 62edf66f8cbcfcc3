#ifndef SQUEEZEGATE_CORE_HPP
#define SQUEEZEGATE_CORE_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sqg {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorCode {
  InvalidArgument,
  TruncationTooSmall,
  LeakageExceeded,
  NonFinite,
  IndexOutOfRange,
  AxisMismatch,
  InconsistentAmplitudes,
  NonCommutingDrives,
  PhaseOutOfRange,
  DimensionMismatch,
  NonUnitary,
  NoConvergence,
  ZigZagUnstable,
  ZeroDetuning,
  Config,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::LeakageExceeded: return "LeakageExceeded";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AxisMismatch: return "AxisMismatch";
    case ErrorCode::InconsistentAmplitudes: return "InconsistentAmplitudes";
    case ErrorCode::NonCommutingDrives: return "NonCommutingDrives";
    case ErrorCode::PhaseOutOfRange: return "PhaseOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonUnitary: return "NonUnitary";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZigZagUnstable: return "ZigZagUnstable";
    case ErrorCode::ZeroDetuning: return "ZeroDetuning";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

/// Numerical-budget failures (as opposed to malformed input).
inline bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::TruncationTooSmall:
    case ErrorCode::LeakageExceeded:
    case ErrorCode::NonFinite:
    case ErrorCode::NoConvergence:
    case ErrorCode::ZigZagUnstable:
    case ErrorCode::NonUnitary:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// max-abs deviation of U^dagger U from the identity
inline double unitarity_error(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

}  // namespace sqg

#endif  // SQUEEZEGATE_CORE_HPP
