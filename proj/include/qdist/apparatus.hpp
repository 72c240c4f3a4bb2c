#pragma once

#include "qdist/channel.hpp"

namespace qdist {

enum class FactorKind { quantum, classical };

/// One tensor factor of an apparatus output. Classical factors are diagonal
/// quantum registers; `labels` names their basis states in index order.
struct OutputFactor {
  int dim = 0;
  FactorKind kind = FactorKind::quantum;
  std::vector<std::string> labels;  // classical factors only
};

/// A channel whose output factors into quantum registers and designated
/// classical (diagonal) registers. Classical registers arise from dilations
/// that duplicate each outcome register to kill its coherences; the
/// duplicate copies are already traced out here, so exactly one classical
/// factor per outcome set is exposed. Marginals on every classical factor
/// must be diagonal in the label basis for all inputs; this is checked on a
/// spanning input set.
class Apparatus {
 public:
  Apparatus(QuantumChannel channel, std::vector<OutputFactor> factors);

  const QuantumChannel& channel() const { return channel_; }
  const std::vector<OutputFactor>& factors() const { return factors_; }

  std::vector<int> factor_dims() const;
  std::vector<int> classical_factor_indices() const;
  /// Index of the unique classical factor whose labels equal `labels`;
  /// throws if none or several match.
  int classical_factor(const std::vector<std::string>& labels) const;

  /// Channel from the input to the given output factor alone (all other
  /// factors traced out).
  QuantumChannel marginal(int factor_index) const;

 private:
  QuantumChannel channel_;
  std::vector<OutputFactor> factors_;
};

/// ρ -> Σ_x <phi_x|ρ|phi_x> |x><x| into one classical factor of dimension d.
Apparatus ideal_measurement(const Observable& x);

/// ρ -> Σ_x Q_x ρ Q_x ⊗ |x><x|, output factors (quantum d, classical d).
Apparatus luders_apparatus(const Observable& x);

/// Joint device V = Σ_xz M_xz ⊗ |x> ⊗ |z| with one Kraus block per outcome
/// pair; output factors (quantum r, classical X, classical Z) where r is
/// the common row count of the M_xz.
Apparatus joint_apparatus(const std::vector<std::vector<cmat>>& kraus_xz,
                          const std::vector<std::string>& x_labels,
                          const std::vector<std::string>& z_labels);

/// Lüders apparatus mixed with probability p into the constant channel onto
/// the maximally mixed output state.
Apparatus depolarized_luders(const Observable& x, double p);

/// Appends a uniform classical register for z (a guess carrying no
/// information): ρ -> A(ρ) ⊗ 1/d.
Apparatus with_uniform_guess(const Apparatus& a, const Observable& z);

/// Measures x ideally, keeps the post-measurement state and guesses z
/// uniformly: M_xz = Q_x / √d.
Apparatus x_measure_z_guess(const Observable& x, const Observable& z);

/// Classical mixture: with probability p an ideal x measurement (uniform z
/// guess), with probability 1-p an ideal z measurement (uniform x guess).
Apparatus mixed_ideal_joint(const Observable& x, const Observable& z, double p);

}  // namespace qdist
