#pragma once

#include <map>
#include <vector>

#include "qdist/linalg.hpp"

namespace qdist::sdp {

enum class BlockField { real_symmetric, complex_hermitian };

struct SdpBlock {
  int dim = 0;
  BlockField field = BlockField::complex_hermitian;
};

/// Standard-form program over a block-diagonal PSD variable X:
///
///     maximize   Σ_b <C_b, X_b>
///     subject to Σ_b <A_{i,b}, X_b> = b_i   (i = 1..m),   X_b ⪰ 0.
///
/// All objective and constraint matrices must be Hermitian (real symmetric
/// on real blocks). Complex Hermitian blocks are embedded internally as
/// real symmetric blocks [[Re, -Im], [Im, Re]] with objective and
/// constraint coefficients rescaled by 1/2 to undo the doubling, so stated
/// values and certificates always refer to the complex data.
class SdpProblem {
 public:
  int add_block(int dim, BlockField field = BlockField::complex_hermitian);
  void add_objective(int block, const cmat& c);
  int add_equality(double rhs);
  void add_coefficient(int constraint, int block, const cmat& a);

  const std::vector<SdpBlock>& blocks() const { return blocks_; }
  const std::vector<cmat>& objective() const { return objective_; }
  int num_constraints() const { return static_cast<int>(rhs_.size()); }
  double rhs(int i) const { return rhs_.at(i); }
  const std::map<int, cmat>& coefficients(int i) const { return coeffs_.at(i); }

 private:
  void check_block_matrix(int block, const cmat& m, const char* what) const;

  std::vector<SdpBlock> blocks_;
  std::vector<cmat> objective_;
  std::vector<double> rhs_;
  std::vector<std::map<int, cmat>> coeffs_;
};

enum class SolveStatus { optimal, max_iterations, numerical_failure };

const char* to_string(SolveStatus s);

struct SdpSolution;
/// One-line diagnostic summary (status, iterations, gap, residuals).
std::string describe(const SdpSolution& sol);

struct SdpSolution {
  double primal_value = 0.0;
  double dual_value = 0.0;
  /// dual_value - primal_value; nonnegative up to roundoff by weak duality.
  double gap = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::numerical_failure;
  /// Optimal X blocks, PSD and primal feasible within the feasibility
  /// tolerance (complex form for complex blocks).
  std::vector<cmat> primal_certificate;
  /// Dual slacks S_b = Σ_i y_i A_{i,b} - C_b, PSD within tolerance.
  std::vector<cmat> dual_certificate;
  rvec multipliers;  // y
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

struct SolverOptions {
  double gap_tol = 1e-8;   // relative duality gap
  double feas_tol = 1e-8;  // primal/dual residuals
  int max_iterations = 200;
  bool parallel_schur = true;
};

}  // namespace qdist::sdp
