#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "qdist/sampling.hpp"
#include "qdist/sdp/schur.hpp"

// Serial reference vs OpenMP kernels on representative workloads: the Schur
// assembly of a diamond-norm SDP (the solver's hot loop) and the sampled
// distinguishability bound.

namespace {

using namespace qdist;

sdp::SdpProblem diamond_problem(int din, int dout, std::uint64_t seed) {
  testing::Rng rng(seed);
  const QuantumChannel e1 = testing::random_channel(rng, din, dout, 2);
  const QuantumChannel e2 = testing::random_channel(rng, din, dout, 2);
  const cmat cdelta = choi_of(e1).op.matrix() - choi_of(e2).op.matrix();
  const int nba = dout * din;

  sdp::SdpProblem prob;
  const int yb = prob.add_block(nba);
  const int zb = prob.add_block(nba);
  const int rb = prob.add_block(din);
  prob.add_objective(yb, cdelta);
  const int tc = prob.add_equality(1.0);
  prob.add_coefficient(tc, rb, cmat::Identity(din, din));
  for (const cmat& h : hermitian_basis(nba)) {
    const int c = prob.add_equality(0.0);
    prob.add_coefficient(c, yb, h);
    prob.add_coefficient(c, zb, h);
    prob.add_coefficient(c, rb, -partial_trace(h, {dout, din}, {1}));
  }
  return prob;
}

std::vector<rmat> unit_scalings(const sdp::CompiledProblem& p, std::uint64_t seed) {
  testing::Rng rng(seed);
  std::vector<rmat> w;
  for (int d : p.block_dims) {
    const cmat g = testing::random_hermitian(rng, d);
    rmat s = g.real();
    s = 0.5 * (s + s.transpose()).eval();
    s += static_cast<double>(d) * rmat::Identity(d, d);
    w.push_back(s);
  }
  return w;
}

void bm_schur_serial(benchmark::State& state) {
  const auto p = sdp::compile(diamond_problem(static_cast<int>(state.range(0)),
                                              static_cast<int>(state.range(0)), 42));
  const auto w = unit_scalings(p, 7);
  for (auto _ : state) benchmark::DoNotOptimize(sdp::schur_assemble_serial(p, w));
}

void bm_schur_openmp(benchmark::State& state) {
  const auto p = sdp::compile(diamond_problem(static_cast<int>(state.range(0)),
                                              static_cast<int>(state.range(0)), 42));
  const auto w = unit_scalings(p, 7);
  for (auto _ : state) benchmark::DoNotOptimize(sdp::schur_assemble_openmp(p, w));
}

void bm_sampled_bound_serial(benchmark::State& state) {
  testing::Rng rng(11);
  const QuantumChannel e1 = testing::random_channel(rng, 3, 3, 2);
  const QuantumChannel e2 = testing::random_channel(rng, 3, 3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sampled_distinguishability_bound_serial(e1, e2, static_cast<int>(state.range(0)), 5));
}

void bm_sampled_bound_openmp(benchmark::State& state) {
  testing::Rng rng(11);
  const QuantumChannel e1 = testing::random_channel(rng, 3, 3, 2);
  const QuantumChannel e2 = testing::random_channel(rng, 3, 3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sampled_distinguishability_bound(e1, e2, static_cast<int>(state.range(0)), 5));
}

}  // namespace

BENCHMARK(bm_schur_serial)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(bm_schur_openmp)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(bm_sampled_bound_serial)->Arg(1000);
BENCHMARK(bm_sampled_bound_openmp)->Arg(1000);

BENCHMARK_MAIN();
