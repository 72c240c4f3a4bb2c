#pragma once

#include <optional>

#include "qdist/sdp/problem.hpp"

namespace qdist::sdp {

// Real-symmetric form of an SdpProblem after embedding complex blocks.
// Constraint coefficients are kept as symmetric triplet lists (both
// triangles); a dense copy is cached when the entry count reaches the
// block dimension, where dense W*A*W wins over rank-one accumulation.

struct SparseEntry {
  int r = 0, c = 0;
  double v = 0.0;
};

struct BlockCoeff {
  int con = 0;  // owning constraint
  std::vector<SparseEntry> entries;
  std::optional<rmat> dense;
};

struct ConsRef {
  int block = 0;
  int pos = 0;  // index into by_block[block]
};

struct CompiledProblem {
  std::vector<int> block_dims;                    // real dimensions
  std::vector<bool> block_complex;                // embedded from complex?
  std::vector<rmat> objective;                    // dense per block
  std::vector<std::vector<BlockCoeff>> by_block;  // sorted by constraint
  std::vector<std::vector<ConsRef>> by_con;
  rvec rhs;
  long total_dim = 0;
};

CompiledProblem compile(const SdpProblem& p);

double dot_coeff(const BlockCoeff& a, const rmat& m);
void scatter_coeff(const BlockCoeff& a, double weight, rmat& out);
/// W A W for one coefficient (rank-one accumulation or dense product).
rmat sandwich(const BlockCoeff& a, const rmat& w);

/// Schur complement of the scaled Newton system: M(i, j) = Σ_b <A_i, W_b A_j W_b>.
/// The serial kernel is the reference; the OpenMP kernel parallelizes over
/// columns and produces bitwise-identical output for every thread count.
rmat schur_assemble_serial(const CompiledProblem& p, const std::vector<rmat>& w);
rmat schur_assemble_openmp(const CompiledProblem& p, const std::vector<rmat>& w);

}  // namespace qdist::sdp
