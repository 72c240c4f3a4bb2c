#pragma once

#include <vector>

#include "qdist/types.hpp"

namespace qdist {

// Index conventions used throughout: tensor factors are ordered left to
// right with the LEFT factor varying SLOWEST, i.e. the row index of a ⊗ b
// is i * rows(b) + k for row i of a and row k of b. Serialized matrices are
// arrays of row arrays; complex scalars serialize as [re, im].

/// Kronecker product, left factor slowest.
cmat tensor(const cmat& a, const cmat& b);
cmat tensor(std::initializer_list<cmat> factors);
cvec tensor(const cvec& a, const cvec& b);

bool is_hermitian(const cmat& m, double tol = tols::hermiticity);

/// Trace over the factors NOT listed in `keep`. `dims` are the factor
/// dimensions (product must equal the operator dimension); `keep` holds
/// factor indices in increasing order. The result lives on the kept
/// factors in their original order.
cmat partial_trace(const cmat& op, const std::vector<int>& dims,
                   const std::vector<int>& keep);

class HermitianOperator {
 public:
  explicit HermitianOperator(cmat m, double tol = tols::hermiticity);
  int dim() const { return static_cast<int>(m_.rows()); }
  const cmat& matrix() const { return m_; }

 private:
  cmat m_;
};

class DensityOperator {
 public:
  explicit DensityOperator(cmat m);
  explicit DensityOperator(HermitianOperator op);
  int dim() const { return op_.dim(); }
  const cmat& matrix() const { return op_.matrix(); }
  const HermitianOperator& op() const { return op_; }

 private:
  HermitianOperator op_;
};

HermitianOperator partial_trace(const HermitianOperator& op,
                                const std::vector<int>& dims,
                                const std::vector<int>& keep);

// All spectral quantities route through the one Hermitian eigensolver.
rvec hermitian_eigenvalues(const cmat& m);
Eigen::SelfAdjointEigenSolver<cmat> hermitian_eigensystem(const cmat& m);

/// Largest eigenvalue magnitude.
double operator_norm(const HermitianOperator& op);
double operator_norm_hermitian(const cmat& m);

/// Half the trace norm of the difference: (1/2) Σ |eig(rho1 - rho2)|.
double trace_distance(const DensityOperator& rho1, const DensityOperator& rho2);
double trace_distance_hermitian(const cmat& a, const cmat& b);

/// Orthonormal basis of the real vector space of d x d Hermitian matrices:
/// d diagonal units E_kk, then (E_kl + E_lk)/√2 and i(E_kl - E_lk)/√2 for
/// k < l. Used to expand operator equalities into scalar SDP constraints.
std::vector<cmat> hermitian_basis(int d);

}  // namespace qdist
