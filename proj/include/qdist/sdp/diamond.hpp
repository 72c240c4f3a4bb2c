#pragma once

#include "qdist/channel.hpp"
#include "qdist/sdp/problem.hpp"

namespace qdist::sdp {

struct SdpSummary {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::numerical_failure;
};

SdpSummary summarize(const SdpSolution& sol);

/// δ(E1, E2) = (1/2)‖E1 − E2‖◇ with both optimizers:
///   primal  max <C(Δ), Y>  s.t.  0 ⪯ Y ⪯ 1_B ⊗ ρ, ρ a state      (delta = optimum)
///   dual    min ‖Tr_B R‖   s.t.  R ⪰ C(Δ), R ⪰ 0                 (same optimum)
/// The dual multipliers of the operator equality Y + Z = 1 ⊗ ρ assemble
/// exactly into the dual variable R.
struct DiamondResult {
  double delta = 0.0;
  HermitianOperator primal_Y;
  DensityOperator primal_rho;
  HermitianOperator dual_R;
  SdpSummary sdp;
};

/// Throws SolverError (with diagnostics) if the solve does not reach
/// optimal status. The Ω basis of the Choi matrices is computational;
/// delta itself is basis independent.
DiamondResult diamond_distance(const QuantumChannel& e1, const QuantumChannel& e2,
                               const SolverOptions& options = {});

}  // namespace qdist::sdp
