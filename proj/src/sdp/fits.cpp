#include "qdist/sdp/fits.hpp"

#include <algorithm>
#include <cmath>

#include "qdist/sdp/solver.hpp"

namespace qdist::sdp {

namespace {

[[noreturn]] void raise_solver_error(const char* where, const SdpSolution& sol) {
  throw SolverError(std::string(where) + ": " + describe(sol));
}

cmat hermitize(const cmat& m) { return 0.5 * (m + m.adjoint()); }

double real_inner(const cmat& a, const cmat& b) { return (a * b).trace().real(); }

// Objective "maximize -t" plus the operator-norm epigraph
//   t 1_in - Tr_out R = W1 ⪰ 0
// shared by every fit below. Returns the t block index.
struct NormEpigraph {
  int t_block;
  int r_block;
  int w1_block;
};

NormEpigraph add_norm_epigraph(SdpProblem& prob, int dout, int din) {
  NormEpigraph ep{};
  ep.r_block = prob.add_block(dout * din);
  ep.w1_block = prob.add_block(din);
  ep.t_block = prob.add_block(1, BlockField::real_symmetric);
  prob.add_objective(ep.t_block, -cmat::Identity(1, 1));
  for (const cmat& h : hermitian_basis(din)) {
    const int c = prob.add_equality(0.0);
    const double trh = h.trace().real();
    if (trh != 0.0) prob.add_coefficient(c, ep.t_block, trh * cmat::Identity(1, 1));
    prob.add_coefficient(c, ep.r_block, -tensor(cmat::Identity(dout, dout), h));
    prob.add_coefficient(c, ep.w1_block, -h);
  }
  return ep;
}

double fit_delta(const SdpSolution& sol, const NormEpigraph& ep) {
  return std::max(0.0, sol.primal_certificate[ep.t_block](0, 0).real());
}

}  // namespace

ConstantFit min_constant_distance(const QuantumChannel& e, const SolverOptions& options) {
  const int din = e.dim_in();
  const int dout = e.dim_out();
  const int nba = dout * din;
  const cmat ce = choi_of(e).op.matrix();

  SdpProblem prob;
  const NormEpigraph ep = add_norm_epigraph(prob, dout, din);
  const int w2 = prob.add_block(nba);  // R - C(E) + σ ⊗ 1 ⪰ 0
  const int sb = prob.add_block(dout);

  const int trace_con = prob.add_equality(1.0);
  prob.add_coefficient(trace_con, sb, cmat::Identity(dout, dout));

  for (const cmat& g : hermitian_basis(nba)) {
    const int c = prob.add_equality(real_inner(g, ce));
    prob.add_coefficient(c, ep.r_block, g);
    prob.add_coefficient(c, sb, partial_trace(g, {dout, din}, {0}));
    prob.add_coefficient(c, w2, -g);
  }

  const SdpSolution sol = solve(prob, options);
  if (sol.status != SolveStatus::optimal) raise_solver_error("min_constant_distance", sol);

  cmat sigma = sol.primal_certificate[sb];
  sigma /= sigma.trace().real();
  return ConstantFit{fit_delta(sol, ep), DensityOperator(std::move(sigma)), summarize(sol)};
}

MeasPrepFit min_measprep_distance(const Apparatus& a, const Observable& x,
                                  const SolverOptions& options) {
  const int d = x.dim();
  if (a.channel().dim_in() != d)
    throw DimensionMismatch("min_measprep_distance: apparatus input dim must match x");
  const auto classical = a.classical_factor_indices();
  if (classical.size() != 1)
    throw ValidationError("min_measprep_distance: apparatus needs exactly one classical factor");
  const int cf = classical[0];
  if (cf != static_cast<int>(a.factors().size()) - 1)
    throw ValidationError("min_measprep_distance: the classical factor must be the last one");
  if (a.factors()[cf].labels != x.labels())
    throw ValidationError("min_measprep_distance: classical labels must match x (count or order)");
  const int r = a.channel().dim_out() / d;

  const cmat ca = choi_of(a.channel()).op.matrix();
  // C(P∘Q_X) = Σ_x ρ^x ⊗ |x><x| ⊗ conj(Q_X(x)) in the computational Ω basis.
  std::vector<cmat> fx;
  for (int i = 0; i < d; ++i) {
    cmat exx = cmat::Zero(d, d);
    exx(i, i) = 1.0;
    fx.push_back(tensor(exx, x.projector(i).conjugate()));
  }

  SdpProblem prob;
  const NormEpigraph ep = add_norm_epigraph(prob, r * d, d);
  const int nba = r * d * d;
  const int w2 = prob.add_block(nba);
  std::vector<int> rho_blocks;
  for (int i = 0; i < d; ++i) {
    const int b = prob.add_block(r);
    rho_blocks.push_back(b);
    const int c = prob.add_equality(1.0);
    prob.add_coefficient(c, b, cmat::Identity(r, r));
  }

  const cmat id_r = cmat::Identity(r, r);
  for (const cmat& g : hermitian_basis(nba)) {
    const int c = prob.add_equality(real_inner(g, ca));
    prob.add_coefficient(c, ep.r_block, g);
    prob.add_coefficient(c, w2, -g);
    for (int i = 0; i < d; ++i) {
      const cmat adj = hermitize(partial_trace(g * tensor(id_r, fx[i]), {r, d * d}, {0}));
      if (adj.cwiseAbs().maxCoeff() > 0.0) prob.add_coefficient(c, rho_blocks[i], adj);
    }
  }

  const SdpSolution sol = solve(prob, options);
  if (sol.status != SolveStatus::optimal) raise_solver_error("min_measprep_distance", sol);

  std::vector<DensityOperator> states;
  for (int i = 0; i < d; ++i) {
    cmat rho = sol.primal_certificate[rho_blocks[i]];
    rho /= rho.trace().real();
    states.emplace_back(std::move(rho));
  }
  return MeasPrepFit{fit_delta(sol, ep), std::move(states), summarize(sol)};
}

RecoveryFit min_recovery_measurement(const QuantumChannel& n, const Observable& x,
                                     const SolverOptions& options) {
  const int d = x.dim();
  if (n.dim_in() != d)
    throw DimensionMismatch("min_recovery_measurement: channel input dim must match x");
  const int db = n.dim_out();

  // N(|k><l|) precomputed; C(Λ∘N) is linear in the POVM elements via
  // <G, C(Λ∘N)> = Σ_i <M_i(G), Λ_i>, M_i(G) = Σ_{k,k'} G_{(i,k'),(i,k)} N(|k><k'|).
  std::vector<std::vector<cmat>> nkl(d, std::vector<cmat>(d));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      cmat unit = cmat::Zero(d, d);
      unit(k, l) = 1.0;
      nkl[k][l] = n.apply_matrix(unit);
    }
  const cmat cqx = choi_of(ideal_measurement(x).channel()).op.matrix();

  SdpProblem prob;
  const NormEpigraph ep = add_norm_epigraph(prob, d, d);
  const int nba = d * d;
  const int w2 = prob.add_block(nba);
  std::vector<int> povm_blocks;
  for (int i = 0; i < d; ++i) povm_blocks.push_back(prob.add_block(db));

  for (const cmat& h : hermitian_basis(db)) {
    const int c = prob.add_equality(h.trace().real());
    for (int i = 0; i < d; ++i) prob.add_coefficient(c, povm_blocks[i], h);
  }

  for (const cmat& g : hermitian_basis(nba)) {
    const int c = prob.add_equality(real_inner(g, cqx));
    prob.add_coefficient(c, ep.r_block, g);
    prob.add_coefficient(c, w2, -g);
    for (int i = 0; i < d; ++i) {
      cmat mi = cmat::Zero(db, db);
      for (int k = 0; k < d; ++k)
        for (int kp = 0; kp < d; ++kp) mi += g(i * d + kp, i * d + k) * nkl[k][kp];
      mi = hermitize(mi);
      if (mi.cwiseAbs().maxCoeff() > 0.0) prob.add_coefficient(c, povm_blocks[i], mi);
    }
  }

  const SdpSolution sol = solve(prob, options);
  if (sol.status != SolveStatus::optimal) raise_solver_error("min_recovery_measurement", sol);

  std::vector<HermitianOperator> povm;
  for (int i = 0; i < d; ++i) povm.emplace_back(sol.primal_certificate[povm_blocks[i]]);
  return RecoveryFit{fit_delta(sol, ep), std::move(povm), summarize(sol)};
}

}  // namespace qdist::sdp
