#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "qdist/sampling.hpp"
#include "qdist/sdp/diamond.hpp"

using namespace qdist;

namespace {

QuantumChannel phase_unitary(double theta) {
  cmat u = cmat::Identity(2, 2);
  u(1, 1) = cplx(std::cos(theta), std::sin(theta));
  return QuantumChannel(2, 2, {u});
}

// For qubit unitaries 1 vs diag(1, e^{iθ}) the distance from the origin to
// the segment between the eigenvalues 1 and e^{iθ} is ν = cos(θ/2), and
// δ = √(1 − ν²) = sin(θ/2).
double unitary_delta_oracle(double theta) { return std::sin(theta / 2.0); }

// ‖Tr_out R‖ of the returned dual certificate, corrected by its feasibility
// defect so the result is a rigorous upper bound on δ.
double certified_upper_bound(const sdp::DiamondResult& res, const QuantumChannel& e1,
                             const QuantumChannel& e2) {
  const cmat cdelta = choi_of(e1).op.matrix() - choi_of(e2).op.matrix();
  const cmat r = res.dual_R.matrix();
  const double viol =
      std::max({0.0, -hermitian_eigenvalues(r - cdelta).minCoeff(),
                -hermitian_eigenvalues(r).minCoeff()});
  const cmat tr_out = partial_trace(r, {e1.dim_out(), e1.dim_in()}, {1});
  return operator_norm_hermitian(tr_out) + viol * e1.dim_out();
}

}  // namespace

TEST_CASE("identical channels have distance zero") {
  testing::Rng rng(60);
  const QuantumChannel e = testing::random_channel(rng, 2, 2, 2);
  const sdp::DiamondResult res = sdp::diamond_distance(e, e);
  CHECK(res.delta < 1e-9);
  CHECK(std::abs(res.sdp.dual_value) < 1e-7);
}

TEST_CASE("qubit phase unitaries match the closed-form hull oracle") {
  const double theta = std::numbers::pi / 2.0;
  const sdp::DiamondResult res =
      sdp::diamond_distance(QuantumChannel::identity(2), phase_unitary(theta));
  CHECK(std::abs(res.delta - unitary_delta_oracle(theta)) < 1e-7);
  CHECK(std::abs(res.delta - std::sqrt(0.5)) < 1e-6);
}

TEST_CASE("primal and dual values agree and bracket the truth") {
  const Observable xc = Observable::computational(2);
  const Observable xf = Observable::fourier(2);
  const QuantumChannel qx = ideal_measurement(xc).channel();
  const QuantumChannel qz = ideal_measurement(xf).channel();
  const sdp::DiamondResult res = sdp::diamond_distance(qx, qz);
  CHECK(std::abs(res.sdp.primal_value - res.sdp.dual_value) < 1e-7);

  const double lower = sampled_distinguishability_bound(qx, qz, 10000, 4242);
  const double upper = certified_upper_bound(res, qx, qz);
  CHECK(lower <= res.delta + 1e-7);
  CHECK(res.delta <= upper + 1e-7);
  CHECK(res.delta > 0.1);  // distinct measurements are distinguishable
}

TEST_CASE("orthogonal replacement channels are perfectly distinguishable") {
  cmat p0 = cmat::Zero(2, 2), p1 = cmat::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const sdp::DiamondResult res = sdp::diamond_distance(
      constant_channel(DensityOperator(p0), 2), constant_channel(DensityOperator(p1), 2));
  CHECK(std::abs(res.delta - 1.0) < 1e-7);
}

TEST_CASE("certificates are feasible for the stated primal and dual programs") {
  testing::Rng rng(61);
  const QuantumChannel e1 = testing::random_channel(rng, 2, 3, 2);
  const QuantumChannel e2 = testing::random_channel(rng, 2, 3, 2);
  const sdp::DiamondResult res = sdp::diamond_distance(e1, e2);

  // Y between 0 and 1 ⊗ rho.
  const cmat y = res.primal_Y.matrix();
  CHECK(hermitian_eigenvalues(y).minCoeff() > -1e-7);
  const cmat cap = tensor(cmat::Identity(3, 3), res.primal_rho.matrix());
  CHECK(hermitian_eigenvalues(cap - y).minCoeff() > -1e-7);

  // Primal value reproduced by the certificate pair.
  const cmat cdelta = choi_of(e1).op.matrix() - choi_of(e2).op.matrix();
  CHECK(std::abs((cdelta * y).trace().real() - res.sdp.primal_value) < 1e-7);

  // Weak duality between the certificate evaluations.
  CHECK(res.sdp.primal_value <= certified_upper_bound(res, e1, e2) + 1e-7);
}

TEST_CASE("delta is monotone under pre- and post-composition") {
  testing::Rng rng(62);
  for (int rep = 0; rep < 4; ++rep) {
    const int d = rep == 3 ? 3 : 2;
    const QuantumChannel e1 = testing::random_channel(rng, d, d, 2);
    const QuantumChannel e2 = testing::random_channel(rng, d, d, 2);
    const QuantumChannel f = testing::random_channel(rng, d, d, 2);
    const double base = sdp::diamond_distance(e1, e2).delta;
    CHECK(sdp::diamond_distance(compose(f, e1), compose(f, e2)).delta <= base + 1e-7);
    CHECK(sdp::diamond_distance(compose(e1, f), compose(e2, f)).delta <= base + 1e-7);
    const double swapped = sdp::diamond_distance(e2, e1).delta;
    CHECK(std::abs(base - swapped) <= 1e-7);
  }
}

TEST_CASE("dimension mismatch is rejected before solving") {
  CHECK_THROWS_AS((void)sdp::diamond_distance(QuantumChannel::identity(2),
                                              QuantumChannel::identity(3)),
                  DimensionMismatch);
}

TEST_CASE("sampled lower bound never exceeds delta") {
  testing::Rng rng(63);
  for (int rep = 0; rep < 3; ++rep) {
    const QuantumChannel e1 = testing::random_channel(rng, 2, 2, 3);
    const QuantumChannel e2 = testing::random_channel(rng, 2, 2, 1);
    const sdp::DiamondResult res = sdp::diamond_distance(e1, e2);
    const double lb = sampled_distinguishability_bound(e1, e2, 200, 7 + rep);
    CHECK(lb <= res.delta + 1e-7);
  }
}

TEST_CASE("serial and parallel sampled bounds agree bitwise") {
  testing::Rng rng(64);
  const QuantumChannel e1 = testing::random_channel(rng, 3, 3, 2);
  const QuantumChannel e2 = testing::random_channel(rng, 3, 3, 2);
  const double serial = sampled_distinguishability_bound_serial(e1, e2, 500, 99);
  const double parallel = sampled_distinguishability_bound(e1, e2, 500, 99);
  CHECK(serial == parallel);
}
