#include "qdist/sdp/diamond.hpp"

#include <algorithm>

#include "qdist/sdp/solver.hpp"

namespace qdist::sdp {

SdpSummary summarize(const SdpSolution& sol) {
  return SdpSummary{sol.primal_value, sol.dual_value, sol.gap, sol.iterations, sol.status};
}

namespace {

[[noreturn]] void raise_solver_error(const char* where, const SdpSolution& sol) {
  throw SolverError(std::string(where) + ": " + describe(sol));
}

}  // namespace

DiamondResult diamond_distance(const QuantumChannel& e1, const QuantumChannel& e2,
                               const SolverOptions& options) {
  if (e1.dim_in() != e2.dim_in() || e1.dim_out() != e2.dim_out())
    throw DimensionMismatch("diamond_distance: channels must share dim_in and dim_out");
  const int din = e1.dim_in();
  const int dout = e1.dim_out();
  const int nba = dout * din;
  const cmat cdelta = choi_of(e1).op.matrix() - choi_of(e2).op.matrix();

  SdpProblem prob;
  const int yb = prob.add_block(nba);
  const int zb = prob.add_block(nba);  // slack: Z = 1 ⊗ ρ - Y
  const int rb = prob.add_block(din);
  prob.add_objective(yb, cdelta);

  const int trace_con = prob.add_equality(1.0);
  prob.add_coefficient(trace_con, rb, cmat::Identity(din, din));

  for (const cmat& h : hermitian_basis(nba)) {
    const int c = prob.add_equality(0.0);
    prob.add_coefficient(c, yb, h);
    prob.add_coefficient(c, zb, h);
    prob.add_coefficient(c, rb, -partial_trace(h, {dout, din}, {1}));
  }

  const SdpSolution sol = solve(prob, options);
  if (sol.status != SolveStatus::optimal) raise_solver_error("diamond_distance", sol);

  cmat rho = sol.primal_certificate[rb];
  rho /= rho.trace().real();

  DiamondResult out{std::clamp(sol.primal_value, 0.0, 1.0),
                    HermitianOperator(sol.primal_certificate[yb]),
                    DensityOperator(std::move(rho)),
                    HermitianOperator(sol.dual_certificate[zb]),
                    summarize(sol)};
  return out;
}

}  // namespace qdist::sdp
