#include "qdist/sdp/schur.hpp"

#include <algorithm>

namespace qdist::sdp {

namespace {

void append_real_entry(std::vector<SparseEntry>& out, int r, int c, double v) {
  if (v != 0.0) out.push_back(SparseEntry{r, c, v});
}

// Triplets of (1/2) * [[Re a, -Im a], [Im a, Re a]] for a complex Hermitian
// coefficient, or of the matrix itself on a real block.
std::vector<SparseEntry> to_entries(const cmat& a, bool complex_block) {
  const int n = static_cast<int>(a.rows());
  std::vector<SparseEntry> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = a(i, j).real();
      const double im = a(i, j).imag();
      if (!complex_block) {
        append_real_entry(out, i, j, re);
        continue;
      }
      append_real_entry(out, i, j, 0.5 * re);
      append_real_entry(out, i + n, j + n, 0.5 * re);
      append_real_entry(out, i, j + n, -0.5 * im);
      append_real_entry(out, i + n, j, 0.5 * im);
    }
  }
  return out;
}

rmat to_dense(const std::vector<SparseEntry>& entries, int dim) {
  rmat m = rmat::Zero(dim, dim);
  for (const auto& e : entries) m(e.r, e.c) += e.v;
  return m;
}

}  // namespace

CompiledProblem compile(const SdpProblem& p) {
  CompiledProblem out;
  const int nb = static_cast<int>(p.blocks().size());
  out.block_dims.resize(nb);
  out.block_complex.resize(nb);
  out.objective.resize(nb);
  for (int b = 0; b < nb; ++b) {
    const bool cx = p.blocks()[b].field == BlockField::complex_hermitian;
    const int rd = cx ? 2 * p.blocks()[b].dim : p.blocks()[b].dim;
    out.block_dims[b] = rd;
    out.block_complex[b] = cx;
    out.total_dim += rd;
    out.objective[b] = to_dense(to_entries(p.objective()[b], cx), rd);
  }

  const int m = p.num_constraints();
  out.rhs.resize(m);
  out.by_block.resize(nb);
  out.by_con.resize(m);
  for (int i = 0; i < m; ++i) {
    out.rhs(i) = p.rhs(i);
    for (const auto& [b, a] : p.coefficients(i)) {
      BlockCoeff bc;
      bc.con = i;
      bc.entries = to_entries(a, out.block_complex[b]);
      if (static_cast<int>(bc.entries.size()) >= out.block_dims[b])
        bc.dense = to_dense(bc.entries, out.block_dims[b]);
      out.by_con[i].push_back(ConsRef{b, static_cast<int>(out.by_block[b].size())});
      out.by_block[b].push_back(std::move(bc));
    }
  }
  return out;
}

double dot_coeff(const BlockCoeff& a, const rmat& m) {
  double acc = 0.0;
  for (const auto& e : a.entries) acc += e.v * m(e.r, e.c);
  return acc;
}

void scatter_coeff(const BlockCoeff& a, double weight, rmat& out) {
  for (const auto& e : a.entries) out(e.r, e.c) += weight * e.v;
}

rmat sandwich(const BlockCoeff& a, const rmat& w) {
  if (a.dense) return w * (*a.dense) * w;
  rmat out = rmat::Zero(w.rows(), w.cols());
  for (const auto& e : a.entries) out.noalias() += e.v * w.col(e.r) * w.col(e.c).transpose();
  return out;
}

namespace {

// Entries i >= j of column j; columns are independent, so the parallel
// kernel reproduces the serial one bit for bit.
void schur_column(const CompiledProblem& p, const std::vector<rmat>& w, int j, rmat& m) {
  for (const ConsRef& ref : p.by_con[j]) {
    const auto& col_block = p.by_block[ref.block];
    const rmat b = sandwich(col_block[ref.pos], w[ref.block]);
    auto it = std::lower_bound(col_block.begin(), col_block.end(), j,
                               [](const BlockCoeff& bc, int con) { return bc.con < con; });
    for (; it != col_block.end(); ++it) m(it->con, j) += dot_coeff(*it, b);
  }
}

void mirror_lower(rmat& m) {
  for (int j = 0; j < m.cols(); ++j)
    for (int i = j + 1; i < m.rows(); ++i) m(j, i) = m(i, j);
}

}  // namespace

rmat schur_assemble_serial(const CompiledProblem& p, const std::vector<rmat>& w) {
  const int m = static_cast<int>(p.by_con.size());
  rmat out = rmat::Zero(m, m);
  for (int j = 0; j < m; ++j) schur_column(p, w, j, out);
  mirror_lower(out);
  return out;
}

rmat schur_assemble_openmp(const CompiledProblem& p, const std::vector<rmat>& w) {
  const int m = static_cast<int>(p.by_con.size());
  rmat out = rmat::Zero(m, m);
#pragma omp parallel for schedule(dynamic, 8)
  for (int j = 0; j < m; ++j) schur_column(p, w, j, out);
  mirror_lower(out);
  return out;
}

}  // namespace qdist::sdp
