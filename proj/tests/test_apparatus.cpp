#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "qdist/apparatus.hpp"

using namespace qdist;

namespace {
double max_abs(const cmat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("ideal_measurement: eigenstates, symmetry, unbiased input") {
  testing::Rng rng(50);
  const Observable x = testing::random_observable(rng, 3);
  const Apparatus a = ideal_measurement(x);
  for (int i = 0; i < 3; ++i) {
    cmat point = cmat::Zero(3, 3);
    point(i, i) = 1.0;
    CHECK(max_abs(a.channel().apply_matrix(x.projector(i)) - point) < 1e-12);
  }
  const cmat unif = a.channel().apply_matrix(cmat::Identity(3, 3) / 3.0);
  CHECK(max_abs(unif - cmat::Identity(3, 3) / 3.0) < 1e-12);

  // Qubit MUB: |0><0| measured in the Hadamard basis is uniform.
  const Apparatus had = ideal_measurement(Observable::fourier(2));
  cmat p0 = cmat::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK(max_abs(had.channel().apply_matrix(p0) - 0.5 * cmat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("luders_apparatus: eigenstate pass-through and marginal") {
  testing::Rng rng(51);
  const Observable x = testing::random_observable(rng, 2);
  const Apparatus a = luders_apparatus(x);
  for (int i = 0; i < 2; ++i) {
    cmat exx = cmat::Zero(2, 2);
    exx(i, i) = 1.0;
    CHECK(max_abs(a.channel().apply_matrix(x.projector(i)) -
                  tensor(x.projector(i), exx)) < 1e-12);
  }
  CHECK(channel_action_distance(a.marginal(1), ideal_measurement(x).channel()) < 1e-12);

  // Computational X on |+><+| splits evenly into |x><x| ⊗ |x><x|.
  const Apparatus comp = luders_apparatus(Observable::computational(2));
  cmat plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  cmat expected = cmat::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK(max_abs(comp.channel().apply_matrix(plus) - expected) < 1e-12);
}

TEST_CASE("joint_apparatus: measure x, guess z uniformly") {
  const Observable x = Observable::computational(2);
  const Observable z = Observable::fourier(2);
  const Apparatus a = x_measure_z_guess(x, z);
  REQUIRE(a.factors().size() == 3);

  CHECK(channel_action_distance(a.marginal(1), ideal_measurement(x).channel()) < 1e-12);
  const QuantumChannel zm = a.marginal(2);
  for (const cmat& h : spanning_inputs(2))
    CHECK(max_abs(zm.apply_matrix(h) - 0.5 * h.trace() * cmat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("joint_apparatus: commuting case measures both ideally") {
  testing::Rng rng(52);
  const Observable x = testing::random_observable(rng, 3);
  std::vector<std::vector<cmat>> m(3, std::vector<cmat>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] = i == j ? cmat(x.projector(i)) : cmat(cmat::Zero(3, 3));
  const Apparatus a = joint_apparatus(m, x.labels(), x.labels());
  CHECK(channel_action_distance(a.marginal(1), ideal_measurement(x).channel()) < 1e-12);
  CHECK(channel_action_distance(a.marginal(2), ideal_measurement(x).channel()) < 1e-12);
}

TEST_CASE("joint_apparatus: marginals of random devices preserve trace") {
  testing::Rng rng(53);
  const Apparatus a = testing::random_joint_apparatus(rng, 2, 2);
  for (int f = 0; f < 3; ++f) {
    const QuantumChannel marg = a.marginal(f);
    const DensityOperator in = testing::random_density(rng, 2);
    CHECK(std::abs(marg.apply_matrix(in.matrix()).trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("joint_apparatus rejects incomplete Kraus families") {
  const Observable x = Observable::computational(2);
  std::vector<std::vector<cmat>> m(2, std::vector<cmat>(2, cmat::Zero(2, 2)));
  m[0][0] = x.projector(0);  // misses the 1 outcome entirely
  CHECK_THROWS_AS((void)joint_apparatus(m, x.labels(), x.labels()), ValidationError);
}

TEST_CASE("apparatus validation catches non-diagonal classical factors") {
  // The identity channel declared as one classical factor keeps coherences.
  CHECK_THROWS_AS(
      (void)Apparatus(QuantumChannel::identity(2),
                      {OutputFactor{2, FactorKind::classical, {"0", "1"}}}),
      ValidationError);
}

TEST_CASE("classical factor lookup by labels") {
  const Observable x = Observable::computational(2);
  const Observable z = Observable::fourier(2);
  const Apparatus a = x_measure_z_guess(x, z);
  CHECK(a.classical_factor(x.labels()) == 1);
  CHECK(a.classical_factor(z.labels()) == 2);
  CHECK_THROWS_AS(a.classical_factor({"bogus"}), ValidationError);
}

TEST_CASE("depolarized_luders endpoints") {
  const Observable x = Observable::computational(2);
  const Apparatus p0 = depolarized_luders(x, 0.0);
  CHECK(channel_action_distance(p0.channel(), luders_apparatus(x).channel()) < 1e-12);
  const Apparatus p1 = depolarized_luders(x, 1.0);
  testing::Rng rng(54);
  const DensityOperator in = testing::random_density(rng, 2);
  CHECK(max_abs(p1.channel().apply_matrix(in.matrix()) - cmat::Identity(4, 4) / 4.0) < 1e-12);
}

TEST_CASE("with_uniform_guess appends an uninformative register") {
  const Observable x = Observable::computational(2);
  const Observable z = Observable::fourier(2);
  const Apparatus a = with_uniform_guess(luders_apparatus(x), z);
  REQUIRE(a.factors().size() == 3);
  CHECK(a.channel().dim_out() == 8);
  testing::Rng rng(55);
  const DensityOperator in = testing::random_density(rng, 2);
  const cmat lifted = a.channel().apply_matrix(in.matrix());
  const cmat base = luders_apparatus(x).channel().apply_matrix(in.matrix());
  CHECK(max_abs(lifted - tensor(base, cmat::Identity(2, 2) / 2.0)) < 1e-12);
}

TEST_CASE("mixed_ideal_joint interpolates between the two ideal devices") {
  const Observable x = Observable::computational(2);
  const Observable z = Observable::fourier(2);
  const Apparatus ideal_x = mixed_ideal_joint(x, z, 1.0);
  CHECK(channel_action_distance(ideal_x.marginal(1), ideal_measurement(x).channel()) < 1e-12);
  const Apparatus ideal_z = mixed_ideal_joint(x, z, 0.0);
  CHECK(channel_action_distance(ideal_z.marginal(2), ideal_measurement(z).channel()) < 1e-12);
}

TEST_CASE("classical marginals stay diagonal on random joint devices") {
  testing::Rng rng(56);
  for (int rep = 0; rep < 3; ++rep) {
    const Apparatus a = testing::random_joint_apparatus(rng, 2, 2);
    for (int f : a.classical_factor_indices()) {
      const QuantumChannel marg = a.marginal(f);
      for (const cmat& h : spanning_inputs(2)) {
        const cmat out = marg.apply_matrix(h);
        double off = 0.0;
        for (int r = 0; r < out.rows(); ++r)
          for (int c = 0; c < out.cols(); ++c)
            if (r != c) off += std::abs(out(r, c));
        CHECK(off <= 1e-9);
      }
    }
  }
}
