#include "qdist/sampling.hpp"

#include <algorithm>
#include <random>

namespace qdist {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step on seed ^ index keeps per-sample streams independent.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Pure input on A ⊗ A' held as a d x d coefficient matrix Psi; applying
// E ⊗ 1 gives Σ_K vec(K Psi) vec(K Psi)† on B ⊗ A'.
cmat output_state(const QuantumChannel& e, const cmat& psi) {
  const int din = e.dim_in();
  const int dout = e.dim_out();
  cmat rho = cmat::Zero(static_cast<long>(dout) * din, static_cast<long>(dout) * din);
  for (const cmat& k : e.kraus()) {
    const cmat m = k * psi;
    cvec v(static_cast<long>(dout) * din);
    for (int i = 0; i < dout; ++i)
      for (int a = 0; a < din; ++a) v(static_cast<long>(i) * din + a) = m(i, a);
    rho += v * v.adjoint();
  }
  return rho;
}

double one_sample(const QuantumChannel& e1, const QuantumChannel& e2, std::uint64_t seed,
                  int index) {
  std::mt19937_64 rng(mix(seed, static_cast<std::uint64_t>(index)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = e1.dim_in();
  cmat psi(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) psi(i, j) = cplx(gauss(rng), gauss(rng));
  psi /= psi.norm();
  return trace_distance_hermitian(output_state(e1, psi), output_state(e2, psi));
}

}  // namespace

double sampled_distinguishability_bound_serial(const QuantumChannel& e1,
                                               const QuantumChannel& e2, int samples,
                                               std::uint64_t seed) {
  if (e1.dim_in() != e2.dim_in() || e1.dim_out() != e2.dim_out())
    throw DimensionMismatch("sampled_distinguishability_bound: dimension mismatch");
  double best = 0.0;
  for (int i = 0; i < samples; ++i) best = std::max(best, one_sample(e1, e2, seed, i));
  return best;
}

double sampled_distinguishability_bound(const QuantumChannel& e1, const QuantumChannel& e2,
                                        int samples, std::uint64_t seed) {
  if (e1.dim_in() != e2.dim_in() || e1.dim_out() != e2.dim_out())
    throw DimensionMismatch("sampled_distinguishability_bound: dimension mismatch");
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (int i = 0; i < samples; ++i) best = std::max(best, one_sample(e1, e2, seed, i));
  return best;
}

}  // namespace qdist
