#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdist {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

/// Thrown when an input violates a documented precondition or invariant
/// (bad dimensions, non-Hermitian data, malformed files, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};

/// Thrown when an SDP solve does not reach the optimal status.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Default tolerances. Validation checks are stated per type; the values
// match what a double-precision Hermitian eigensolver attains at d <= 16.
namespace tols {
inline constexpr double hermiticity = 1e-10;   // max-entry metric
inline constexpr double psd_min_eig = -1e-9;
inline constexpr double unit_trace = 1e-9;
inline constexpr double orthonormal = 1e-9;
inline constexpr double trace_preserving = 1e-9;
inline constexpr double choi_marginal = 1e-8;
inline constexpr double classical_diagonal = 1e-9;
inline constexpr double channel_equality = 1e-9;
inline constexpr double verify_grace = 1e-6;
}  // namespace tols

}  // namespace qdist
