#pragma once

#include <optional>
#include <vector>

#include "qdist/observable.hpp"

namespace qdist {

/// CPTP map held as Kraus operators (each dim_out x dim_in). Complete
/// positivity is automatic from the Kraus form; trace preservation
/// (Σ K†K = 1) is validated on construction.
class QuantumChannel {
 public:
  QuantumChannel(int dim_in, int dim_out, std::vector<cmat> kraus);

  int dim_in() const { return din_; }
  int dim_out() const { return dout_; }
  const std::vector<cmat>& kraus() const { return kraus_; }

  /// Σ K ρ K† for an arbitrary matrix argument (linear extension).
  cmat apply_matrix(const cmat& rho) const;

  static QuantumChannel identity(int d);

 private:
  int din_, dout_;
  std::vector<cmat> kraus_;
};

DensityOperator apply(const QuantumChannel& ch, const DensityOperator& rho);

/// Choi operator C(E) = (E ⊗ I)(|Ω><Ω|) with UNNORMALIZED Ω = Σ_k |b_k>|b_k>
/// over the given input basis, ordered output ⊗ input; Tr C = dim_in.
struct ChoiMatrix {
  HermitianOperator op;
  int dim_in;
  int dim_out;
  Observable input_basis;
};

ChoiMatrix choi_of(const QuantumChannel& ch, const Observable& input_basis);
ChoiMatrix choi_of(const QuantumChannel& ch);  // computational Ω basis

/// PSD within tolerance and output-marginal Tr_out C = 1_in within 1e-8.
bool choi_is_cptp(const ChoiMatrix& c, double psd_tol = -tols::psd_min_eig,
                  double marginal_tol = tols::choi_marginal);

/// Kraus operators recovered from the eigendecomposition of a CPTP Choi
/// matrix (eigenvalues below 1e-12 are dropped).
std::vector<cmat> kraus_from_choi(const ChoiMatrix& c);

/// Isometry V = Σ_k K_k ⊗ |k>_E into output ⊗ environment; row (i, k) is
/// i * dim_env + k. The environment is the Kraus index space (canonical
/// dilation, no minimization); any other dilation differs from this one by
/// an isometry acting on the environment alone.
struct StinespringIsometry {
  cmat v;
  int dim_out;
  int dim_env;
};

StinespringIsometry stinespring_of(const QuantumChannel& ch);

/// Environment side of the canonical dilation: ρ -> Tr_out[V ρ V†].
QuantumChannel complement_of(const QuantumChannel& ch);

/// f ∘ g (g acts first); Kraus set is all products F_i G_j.
QuantumChannel compose(const QuantumChannel& f, const QuantumChannel& g);

/// Nonselective ideal measurement of z: ρ -> Σ_z Q_z ρ Q_z.
QuantumChannel pinch(const Observable& z);

/// ρ -> Tr[ρ] σ.
QuantumChannel constant_channel(const DensityOperator& sigma, int dim_in);

/// Classical-input map |x><x| -> ρ^x ⊗ |x><x|; off-diagonal classical
/// inputs are annihilated. Input dimension is the number of states.
QuantumChannel conditional_preparation(const std::vector<DensityOperator>& states);

/// Hermitian spanning set for channel-equality checks: the d² matrix units
/// symmetrized to Hermitian basis elements (linearity makes this complete).
std::vector<cmat> spanning_inputs(int d);

/// Max-entry deviation of the two channels' actions over spanning_inputs.
double channel_action_distance(const QuantumChannel& a, const QuantumChannel& b);

}  // namespace qdist
