#pragma once

#include "qdist/apparatus.hpp"
#include "qdist/sdp/diamond.hpp"

namespace qdist::sdp {

// Joint minimizations over a family of comparison channels, all phrased
// through the dual diamond-norm form min ‖Tr_B R‖ s.t. R ⪰ C(E) − C(family
// member), which is linear in the family parameters.

/// min over constant channels C of δ(E, C), with the optimizing output.
struct ConstantFit {
  double delta = 0.0;
  DensityOperator sigma;
  SdpSummary sdp;
};

ConstantFit min_constant_distance(const QuantumChannel& e, const SolverOptions& options = {});

/// min over conditional preparations P of δ(A_X, P ∘ Q_X), with the
/// optimizing prepared states (one per outcome). The apparatus must expose
/// exactly one classical factor, placed last, labeled like x.
struct MeasPrepFit {
  double delta = 0.0;
  std::vector<DensityOperator> prep_states;
  SdpSummary sdp;
};

MeasPrepFit min_measprep_distance(const Apparatus& a, const Observable& x,
                                  const SolverOptions& options = {});

/// min over POVMs Λ of δ(Q_X, Λ ∘ N): the best achievable recovery of an
/// ideal x measurement from the channel output.
struct RecoveryFit {
  double delta = 0.0;
  std::vector<HermitianOperator> povm;
  SdpSummary sdp;
};

RecoveryFit min_recovery_measurement(const QuantumChannel& n, const Observable& x,
                                     const SolverOptions& options = {});

}  // namespace qdist::sdp
