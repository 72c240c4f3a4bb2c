#include "qdist/sdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "qdist/sdp/schur.hpp"

namespace qdist::sdp {

namespace {

using BlockSet = std::vector<rmat>;

double inner(const BlockSet& a, const BlockSet& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += (a[i].array() * b[i].array()).sum();
  return acc;
}

rvec apply_a(const CompiledProblem& p, const BlockSet& x) {
  rvec out(p.rhs.size());
  for (int i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (const ConsRef& ref : p.by_con[i])
      acc += dot_coeff(p.by_block[ref.block][ref.pos], x[ref.block]);
    out(i) = acc;
  }
  return out;
}

BlockSet apply_at(const CompiledProblem& p, const rvec& y) {
  BlockSet out;
  out.reserve(p.block_dims.size());
  for (int d : p.block_dims) out.push_back(rmat::Zero(d, d));
  for (size_t b = 0; b < p.by_block.size(); ++b)
    for (const BlockCoeff& bc : p.by_block[b]) scatter_coeff(bc, y(bc.con), out[b]);
  return out;
}

struct Scaling {
  std::vector<Eigen::LLT<rmat>> lx, ls;
  BlockSet r, rinv, w;
  std::vector<rvec> lambda;
  bool ok = false;
};

Scaling make_scaling(const BlockSet& x, const BlockSet& s) {
  Scaling sc;
  const size_t nb = x.size();
  sc.lx.resize(nb);
  sc.ls.resize(nb);
  sc.r.resize(nb);
  sc.rinv.resize(nb);
  sc.w.resize(nb);
  sc.lambda.resize(nb);
  for (size_t b = 0; b < nb; ++b) {
    sc.lx[b].compute(x[b]);
    sc.ls[b].compute(s[b]);
    if (sc.lx[b].info() != Eigen::Success || sc.ls[b].info() != Eigen::Success) return sc;
    const rmat lxm = sc.lx[b].matrixL();
    const rmat lsm = sc.ls[b].matrixL();
    Eigen::JacobiSVD<rmat> svd(lsm.transpose() * lxm,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
    const rvec lam = svd.singularValues();
    if (lam.minCoeff() <= 0.0) return sc;
    const rvec lam_isqrt = lam.cwiseSqrt().cwiseInverse();
    // R†SR = R⁻¹XR⁻ᵀ = diag(λ); W = RRᵀ satisfies WSW = X.
    sc.r[b] = lxm * svd.matrixV() * lam_isqrt.asDiagonal();
    const rmat lx_inv = lxm.triangularView<Eigen::Lower>().solve(rmat::Identity(lxm.rows(), lxm.cols()));
    sc.rinv[b] = lam.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * lx_inv;
    sc.w[b] = sc.r[b] * sc.r[b].transpose();
    sc.lambda[b] = lam;
  }
  sc.ok = true;
  return sc;
}

// Largest step with X + alpha * D remaining PSD, given the Cholesky of X.
double max_step(const Eigen::LLT<rmat>& lx, const rmat& d) {
  const rmat l = lx.matrixL();
  const rmat m1 = l.triangularView<Eigen::Lower>().solve(d);
  const rmat m2 = l.triangularView<Eigen::Lower>().solve(m1.transpose());
  Eigen::SelfAdjointEigenSolver<rmat> es(0.5 * (m2 + m2.transpose()), Eigen::EigenvaluesOnly);
  const double nu = es.eigenvalues().minCoeff();
  if (nu >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / nu;
}

double max_step(const std::vector<Eigen::LLT<rmat>>& ll, const BlockSet& d) {
  double a = std::numeric_limits<double>::infinity();
  for (size_t b = 0; b < d.size(); ++b) a = std::min(a, max_step(ll[b], d[b]));
  return a;
}

struct Direction {
  BlockSet dx, ds;
  rvec dy;
};

struct KktSystem {
  rmat m;
  rvec scale;  // Jacobi scaling, tames the 1/mu^2 conditioning near the end
  Eigen::LLT<rmat> llt;
  Eigen::LDLT<rmat> ldlt;
  bool use_ldlt = false;
  bool ok = false;

  void factor(rmat schur) {
    m = std::move(schur);
    scale = m.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const rmat scaled = scale.asDiagonal() * m * scale.asDiagonal();
    // Escalating ridge on the unit-diagonal system; refinement against the
    // unregularized matrix restores the lost digits.
    for (double ridge : {0.0, 1e-14, 1e-12, 1e-10}) {
      llt.compute(ridge == 0.0
                      ? scaled
                      : rmat(scaled + ridge * rmat::Identity(scaled.rows(), scaled.cols())));
      if (llt.info() == Eigen::Success) {
        ok = true;
        return;
      }
    }
    ldlt.compute(scaled);
    use_ldlt = true;
    ok = ldlt.info() == Eigen::Success;
  }

  rvec base_solve(const rvec& rhs) const {
    const rvec scaled_rhs = scale.asDiagonal() * rhs;
    const rvec y =
        use_ldlt ? rvec(ldlt.solve(scaled_rhs)) : rvec(llt.solve(scaled_rhs));
    return scale.asDiagonal() * y;
  }

  rvec solve(const rvec& rhs) const {
    rvec y = base_solve(rhs);
    for (int round = 0; round < 2; ++round) {
      const rvec res = rhs - m * y;
      y += base_solve(res);
    }
    return y;
  }
};

Direction newton(const CompiledProblem& p, const KktSystem& kkt, const Scaling& sc,
                 const BlockSet& rc, const BlockSet& rd, const rvec& rp) {
  const size_t nb = p.block_dims.size();
  BlockSet e(nb);
  for (size_t b = 0; b < nb; ++b) e[b] = rc[b] + sc.w[b] * rd[b] * sc.w[b];
  const rvec rhs = apply_a(p, e) - rp;
  Direction dir;
  dir.dy = kkt.solve(rhs);
  dir.ds = apply_at(p, dir.dy);
  dir.dx.resize(nb);
  for (size_t b = 0; b < nb; ++b) {
    dir.ds[b] -= rd[b];
    dir.dx[b] = rc[b] - sc.w[b] * dir.ds[b] * sc.w[b];
    dir.dx[b] = 0.5 * (dir.dx[b] + dir.dx[b].transpose()).eval();
    dir.ds[b] = 0.5 * (dir.ds[b] + dir.ds[b].transpose()).eval();
  }
  return dir;
}

cmat recover_complex(const rmat& x, bool complex_block, double scale) {
  if (!complex_block) return scale * x.cast<cplx>();
  const int n = static_cast<int>(x.rows()) / 2;
  const rmat pp = x.topLeftCorner(n, n);
  const rmat qq = x.bottomRightCorner(n, n);
  const rmat bb = x.topRightCorner(n, n);
  cmat out(n, n);
  out.real() = 0.5 * (pp + qq);
  out.imag() = 0.5 * (bb.transpose() - bb);
  return scale * out;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  const CompiledProblem p = compile(problem);
  const size_t nb = p.block_dims.size();
  const int m = static_cast<int>(p.rhs.size());

  double norm_b = 1.0, norm_c = 1.0, norm_a = 1.0;
  norm_b = std::max(1.0, p.rhs.cwiseAbs().maxCoeff());
  for (const rmat& c : p.objective) norm_c = std::max(norm_c, c.cwiseAbs().maxCoeff());
  for (const auto& blk : p.by_block)
    for (const BlockCoeff& bc : blk)
      for (const SparseEntry& e : bc.entries) norm_a = std::max(norm_a, std::abs(e.v));

  BlockSet x, s;
  for (int d : p.block_dims) {
    x.push_back(rmat::Identity(d, d) * std::max(10.0, norm_b / norm_a));
    s.push_back(rmat::Identity(d, d) * std::max(10.0, norm_c));
  }
  rvec y = rvec::Zero(m);

  const double nrm_rhs = 1.0 + p.rhs.norm();
  double nrm_obj = 0.0;
  for (const rmat& c : p.objective) nrm_obj += c.squaredNorm();
  nrm_obj = 1.0 + std::sqrt(nrm_obj);

  SdpSolution sol;
  auto finish = [&](SolveStatus status, int iters) {
    sol.status = status;
    sol.iterations = iters;
    sol.primal_value = inner(p.objective, x);
    sol.dual_value = p.rhs.dot(y);
    sol.gap = sol.dual_value - sol.primal_value;
    sol.multipliers = y;
    sol.primal_certificate.clear();
    sol.dual_certificate.clear();
    const BlockSet aty = apply_at(p, y);
    for (size_t b = 0; b < nb; ++b) {
      sol.primal_certificate.push_back(recover_complex(x[b], p.block_complex[b], 1.0));
      const rmat sb = aty[b] - p.objective[b];
      sol.dual_certificate.push_back(
          recover_complex(sb, p.block_complex[b], p.block_complex[b] ? 2.0 : 1.0));
    }
    return sol;
  };

  int stall = 0;
  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    const double pobj = inner(p.objective, x);
    const double dobj = p.rhs.dot(y);
    const rvec rp = p.rhs - apply_a(p, x);
    const BlockSet aty = apply_at(p, y);
    BlockSet rd(nb);
    double dres2 = 0.0;
    for (size_t b = 0; b < nb; ++b) {
      rd[b] = p.objective[b] + s[b] - aty[b];
      dres2 += rd[b].squaredNorm();
    }
    const double gap = inner(x, s);
    const double relgap = gap / std::max(1.0, 0.5 * (std::abs(pobj) + std::abs(dobj)));
    sol.primal_residual = rp.norm() / nrm_rhs;
    sol.dual_residual = std::sqrt(dres2) / nrm_obj;
    if (std::getenv("QDIST_SDP_TRACE"))
      std::fprintf(stderr, "it %3d pobj % .12e dobj % .12e relgap %.3e pres %.3e dres %.3e\n",
                   iter, pobj, dobj, relgap, sol.primal_residual, sol.dual_residual);

    if (relgap <= options.gap_tol && sol.primal_residual <= options.feas_tol &&
        sol.dual_residual <= options.feas_tol)
      return finish(SolveStatus::optimal, iter);
    if (iter == options.max_iterations) return finish(SolveStatus::max_iterations, iter);

    const Scaling sc = make_scaling(x, s);
    if (!sc.ok) {
      if (std::getenv("QDIST_SDP_TRACE")) std::fprintf(stderr, "scaling failed\n");
      return finish(SolveStatus::numerical_failure, iter);
    }

    KktSystem kkt;
    kkt.factor(options.parallel_schur ? schur_assemble_openmp(p, sc.w)
                                      : schur_assemble_serial(p, sc.w));
    if (!kkt.ok) {
      if (std::getenv("QDIST_SDP_TRACE")) std::fprintf(stderr, "schur factor failed\n");
      return finish(SolveStatus::numerical_failure, iter);
    }

    const long ntot = p.total_dim;
    const double mu = gap / static_cast<double>(ntot);

    // Predictor: full complementarity reduction target.
    BlockSet rc_aff(nb);
    for (size_t b = 0; b < nb; ++b) rc_aff[b] = -x[b];
    const Direction aff = newton(p, kkt, sc, rc_aff, rd, rp);
    const double ap_aff = std::min(1.0, max_step(sc.lx, aff.dx));
    const double ad_aff = std::min(1.0, max_step(sc.ls, aff.ds));
    double gap_aff = gap + ap_aff * inner(aff.dx, s) + ad_aff * inner(x, aff.ds) +
                     ap_aff * ad_aff * inner(aff.dx, aff.ds);
    gap_aff = std::max(gap_aff, 0.0);
    const double sigma = std::clamp(std::pow(gap_aff / gap, 3.0), 1e-6, 1.0 - 1e-6);

    // Corrector with the Mehrotra second-order term in scaled variables.
    auto combined_direction = [&](double sig, bool with_corrector) {
      BlockSet rc(nb);
      for (size_t b = 0; b < nb; ++b) {
        const rvec& lam = sc.lambda[b];
        rmat t = rmat::Zero(lam.size(), lam.size());
        if (with_corrector) {
          const rmat dxs = sc.rinv[b] * aff.dx[b] * sc.rinv[b].transpose();
          const rmat dss = sc.r[b].transpose() * aff.ds[b] * sc.r[b];
          t = -0.5 * (dxs * dss + dss * dxs);
        }
        for (int i = 0; i < lam.size(); ++i) t(i, i) += sig * mu - lam(i) * lam(i);
        rmat h(t.rows(), t.cols());
        for (int i = 0; i < t.rows(); ++i)
          for (int j = 0; j < t.cols(); ++j) h(i, j) = 2.0 * t(i, j) / (lam(i) + lam(j));
        rc[b] = sc.r[b] * h * sc.r[b].transpose();
      }
      return newton(p, kkt, sc, rc, rd, rp);
    };

    Direction dir = combined_direction(sigma, true);
    double ap = std::min(1.0, 0.98 * max_step(sc.lx, dir.dx));
    double ad = std::min(1.0, 0.98 * max_step(sc.ls, dir.ds));
    if (std::min(ap, ad) < 0.05) {
      // The second-order term can point outside the cone neighborhood when
      // the iterate is nearly optimal; fall back to a plain centering step.
      const Direction center = combined_direction(std::max(sigma, 0.5), false);
      const double cp = std::min(1.0, 0.98 * max_step(sc.lx, center.dx));
      const double cd = std::min(1.0, 0.98 * max_step(sc.ls, center.ds));
      if (std::min(cp, cd) > std::min(ap, ad)) {
        dir = center;
        ap = cp;
        ad = cd;
      }
    }
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stall >= 3) return finish(SolveStatus::numerical_failure, iter);
    } else {
      stall = 0;
    }
    for (size_t b = 0; b < nb; ++b) {
      x[b] += ap * dir.dx[b];
      s[b] += ad * dir.ds[b];
      x[b] = 0.5 * (x[b] + x[b].transpose()).eval();
      s[b] = 0.5 * (s[b] + s[b].transpose()).eval();
    }
    y += ad * dir.dy;
  }
  return finish(SolveStatus::max_iterations, options.max_iterations);
}

}  // namespace qdist::sdp
