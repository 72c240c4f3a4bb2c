#include "qdist/sdp/problem.hpp"

#include <cstdio>

namespace qdist::sdp {

int SdpProblem::add_block(int dim, BlockField field) {
  if (dim <= 0) throw DimensionMismatch("SdpProblem: block dims must be positive");
  blocks_.push_back(SdpBlock{dim, field});
  objective_.push_back(cmat::Zero(dim, dim));
  return static_cast<int>(blocks_.size()) - 1;
}

void SdpProblem::check_block_matrix(int block, const cmat& m, const char* what) const {
  if (block < 0 || block >= static_cast<int>(blocks_.size()))
    throw DimensionMismatch(std::string("SdpProblem: unknown block in ") + what);
  const int d = blocks_[block].dim;
  if (m.rows() != d || m.cols() != d)
    throw DimensionMismatch(std::string("SdpProblem: matrix shape mismatch in ") + what);
  if (!is_hermitian(m, 1e-12))
    throw ValidationError(std::string("SdpProblem: matrix must be Hermitian in ") + what);
  if (blocks_[block].field == BlockField::real_symmetric &&
      m.imag().cwiseAbs().maxCoeff() > 1e-14)
    throw ValidationError(std::string("SdpProblem: real block got complex data in ") + what);
}

void SdpProblem::add_objective(int block, const cmat& c) {
  check_block_matrix(block, c, "add_objective");
  objective_[block] += c;
}

int SdpProblem::add_equality(double rhs) {
  rhs_.push_back(rhs);
  coeffs_.emplace_back();
  return static_cast<int>(rhs_.size()) - 1;
}

void SdpProblem::add_coefficient(int constraint, int block, const cmat& a) {
  if (constraint < 0 || constraint >= num_constraints())
    throw DimensionMismatch("SdpProblem: unknown constraint in add_coefficient");
  check_block_matrix(block, a, "add_coefficient");
  auto [it, fresh] = coeffs_[constraint].try_emplace(block, a);
  if (!fresh) it->second += a;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

std::string describe(const SdpSolution& sol) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "solver status %s after %d iterations (gap %.3e, primal residual %.3e, "
                "dual residual %.3e)",
                to_string(sol.status), sol.iterations, sol.gap, sol.primal_residual,
                sol.dual_residual);
  return buf;
}

}  // namespace qdist::sdp
