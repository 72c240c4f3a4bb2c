#include "qdist/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qdist {

cmat tensor(const cmat& a, const cmat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

cmat tensor(std::initializer_list<cmat> factors) {
  cmat out = cmat::Identity(1, 1);
  for (const cmat& f : factors) out = tensor(out, f);
  return out;
}

cvec tensor(const cvec& a, const cvec& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

bool is_hermitian(const cmat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

cmat partial_trace(const cmat& op, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionMismatch("partial_trace: factor dims must be positive");
    total *= d;
  }
  if (op.rows() != op.cols() || op.rows() != total)
    throw DimensionMismatch("partial_trace: product of dims does not match operator dimension");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size()))
      throw DimensionMismatch("partial_trace: keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw DimensionMismatch("partial_trace: keep indices must be strictly increasing");
  }

  const int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) kept[k] = true;

  long dkeep = 1;
  for (int k : keep) dkeep *= dims[k];

  // Strides of each factor in the full index (left factor slowest).
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];
  // Strides in the reduced index.
  std::vector<long> rstride(nf, 0);
  long acc = 1;
  for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
    rstride[keep[i]] = acc;
    acc *= dims[keep[i]];
  }

  cmat out = cmat::Zero(dkeep, dkeep);
  for (long r = 0; r < total; ++r) {
    // Decompose row index into factor indices once.
    long rrem = r, rkeep = 0;
    std::vector<int> ridx(nf);
    for (int f = 0; f < nf; ++f) {
      ridx[f] = static_cast<int>(rrem / stride[f]);
      rrem %= stride[f];
      if (kept[f]) rkeep += ridx[f] * rstride[f];
    }
    for (long c = 0; c < total; ++c) {
      long crem = c, ckeep = 0;
      bool diag_on_traced = true;
      for (int f = 0; f < nf; ++f) {
        const int ci = static_cast<int>(crem / stride[f]);
        crem %= stride[f];
        if (kept[f]) {
          ckeep += ci * rstride[f];
        } else if (ci != ridx[f]) {
          diag_on_traced = false;
          break;
        }
      }
      if (diag_on_traced) out(rkeep, ckeep) += op(r, c);
    }
  }
  return out;
}

HermitianOperator::HermitianOperator(cmat m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw DimensionMismatch("HermitianOperator: matrix must be square");
  if (!m_.allFinite())
    throw ValidationError("HermitianOperator: entries must be finite");
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw ValidationError("HermitianOperator: not Hermitian (max deviation " +
                          std::to_string(dev) + ")");
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  const rvec ev = hermitian_eigenvalues(op_.matrix());
  if (ev.minCoeff() < tols::psd_min_eig)
    throw ValidationError("DensityOperator: not positive semidefinite (min eigenvalue " +
                          std::to_string(ev.minCoeff()) + ")");
  const double tr = op_.matrix().trace().real();
  if (std::abs(tr - 1.0) > tols::unit_trace)
    throw ValidationError("DensityOperator: trace must be 1 (got " + std::to_string(tr) + ")");
}

DensityOperator::DensityOperator(cmat m) : DensityOperator(HermitianOperator(std::move(m))) {}

HermitianOperator partial_trace(const HermitianOperator& op,
                                const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  return HermitianOperator(partial_trace(op.matrix(), dims, keep));
}

Eigen::SelfAdjointEigenSolver<cmat> hermitian_eigensystem(const cmat& m) {
  Eigen::SelfAdjointEigenSolver<cmat> es(m);
  if (es.info() != Eigen::Success)
    throw ValidationError("hermitian_eigensystem: eigensolver failed");
  return es;
}

rvec hermitian_eigenvalues(const cmat& m) {
  Eigen::SelfAdjointEigenSolver<cmat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw ValidationError("hermitian_eigenvalues: eigensolver failed");
  return es.eigenvalues();
}

double operator_norm_hermitian(const cmat& m) {
  return hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
}

double operator_norm(const HermitianOperator& op) {
  return operator_norm_hermitian(op.matrix());
}

double trace_distance_hermitian(const cmat& a, const cmat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("trace_distance: dimension mismatch");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho1, const DensityOperator& rho2) {
  return trace_distance_hermitian(rho1.matrix(), rho2.matrix());
}

std::vector<cmat> hermitian_basis(int d) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<cmat> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  for (int k = 0; k < d; ++k) {
    cmat e = cmat::Zero(d, d);
    e(k, k) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      cmat re = cmat::Zero(d, d);
      re(k, l) = s;
      re(l, k) = s;
      basis.push_back(std::move(re));
      cmat im = cmat::Zero(d, d);
      im(k, l) = cplx(0.0, s);
      im(l, k) = cplx(0.0, -s);
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

}  // namespace qdist
