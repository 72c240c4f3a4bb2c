#pragma once

#include <map>

#include "qdist/sdp/fits.hpp"

namespace qdist {

/// Complementarity constants of an observable pair, all derived from the
/// overlap matrix O(x, z) = |<phi_x|theta_z>|²:
///   r(X;Z) = (1/√2)(1 - min_x max_z O(x, z))
///   c1     = max{r(X;Z), r(Z;X)}                 (symmetric)
///   c2(X;Z) = 1 - max_z Σ_x {1/d - O(x, z)}_+    (directional)
/// Ties in the min/max resolve by value only, so the results carry no
/// index-order dependence.
struct ComplementarityPair {
  Observable x;
  Observable z;
  rmat overlaps;
  double r_xz = 0.0;
  double r_zx = 0.0;
  double c1 = 0.0;
  double c2_xz = 0.0;
  double c2_zx = 0.0;
};

ComplementarityPair complementarity(const Observable& x, const Observable& z);

/// ε: δ between the apparatus's classical marginal for x and the ideal
/// measurement of x. The factor is located by matching labels; pass the
/// index explicitly when several classical factors carry the same labels.
double error(const Apparatus& a, const Observable& x,
             const sdp::SolverOptions& options = {});
double error(const Apparatus& a, const Observable& x, int classical_factor,
             const sdp::SolverOptions& options = {});

/// η: 1 - min over constant channels C of δ(A ∘ pinch(z), C).
double disturbance(const Apparatus& a, const Observable& z,
                   const sdp::SolverOptions& options = {});

enum class Relation { jm, ed, measprep, leakage, stinespring_sandwich };

const char* to_string(Relation r);

/// One uncertainty-relation check. `slack` is the signed inequality margin
/// (>= -grace iff pass): lhs - rhs for jm/ed/measprep where the relation
/// reads lhs >= rhs, and rhs - lhs for leakage and the Stinespring sandwich
/// where it reads lhs <= rhs.
struct VerificationReport {
  Relation relation = Relation::jm;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::map<std::string, double> components;
  std::map<std::string, sdp::SdpSummary> certificate_refs;
};

/// Joint-measurability relation: √ε_X + √ε_Z >= c1(X, Z) for any joint device.
VerificationReport verify_jm(const Apparatus& a, const Observable& x, const Observable& z,
                             const sdp::SolverOptions& options = {},
                             double grace = tols::verify_grace);

/// Error-disturbance relation: √2 √ε_X + η_Z >= c2(X;Z) for any device measuring x.
VerificationReport verify_ed(const Apparatus& a, const Observable& x, const Observable& z,
                             const sdp::SolverOptions& options = {},
                             double grace = tols::verify_grace);

/// Measure-prepare bound: min_P δ(A_X, P ∘ Q_X) <= √(2 ε_X).
VerificationReport verify_measprep(const Apparatus& a, const Observable& x,
                                   const sdp::SolverOptions& options = {},
                                   double grace = tols::verify_grace);

/// Leakage bound: with ε the best recovery error for x through n,
/// min_C δ(n♯ ∘ pinch(z), C) <= 2√ε + 1 - c2(X;Z).
VerificationReport verify_leakage(const QuantumChannel& n, const Observable& x,
                                  const Observable& z,
                                  const sdp::SolverOptions& options = {},
                                  double grace = tols::verify_grace);

/// Heuristic environment alignment for the Stinespring continuity bounds:
/// the candidate U is the polar factor of the cross-Gram matrix
/// Tr_out[V1 V2†] (or the identity when that does better); `achieved` =
/// ‖(1 ⊗ U)V1 − V2‖ upper-bounds the true minimum over isometries, so
/// ‖E1 − E2‖◇ <= 2·achieved always holds.
struct IsometryAlignment {
  enum class Method { procrustes, identity };
  cmat u;
  double achieved = 0.0;
  Method method = Method::procrustes;
};

IsometryAlignment align_isometries(const StinespringIsometry& v1,
                                   const StinespringIsometry& v2);

/// Upper half of the continuity sandwich on the canonical dilations:
/// ‖E1 − E2‖◇ <= 2 ‖(1 ⊗ U)V1 − V2‖ for the heuristic U. The lower half
/// needs the true minimum over isometries, which the heuristic only
/// upper-bounds, so it is not asserted here.
VerificationReport verify_stinespring_sandwich(const QuantumChannel& e1,
                                               const QuantumChannel& e2,
                                               const sdp::SolverOptions& options = {},
                                               double grace = tols::verify_grace);

}  // namespace qdist
