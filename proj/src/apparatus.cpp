#include "qdist/apparatus.hpp"

#include <cmath>

namespace qdist {

namespace {

// Kraus operators of "trace out every factor except `keep`": one selector
// per joint index t of the traced factors.
QuantumChannel trace_out_channel(const std::vector<int>& dims, int keep) {
  const int nf = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  long others = total / dims[keep];
  std::vector<cmat> kraus;
  kraus.reserve(others);
  std::vector<int> idx(nf, 0);
  for (long t = 0; t < others; ++t) {
    // Unrank t over the traced factors (left slowest).
    long rem = t;
    for (int f = nf - 1; f >= 0; --f) {
      if (f == keep) continue;
      idx[f] = static_cast<int>(rem % dims[f]);
      rem /= dims[f];
    }
    cmat p = cmat::Zero(dims[keep], total);
    for (int i = 0; i < dims[keep]; ++i) {
      long full = 0;
      for (int f = 0; f < nf; ++f) full += stride[f] * (f == keep ? i : idx[f]);
      p(i, full) = 1.0;
    }
    kraus.push_back(std::move(p));
  }
  return QuantumChannel(static_cast<int>(total), dims[keep], std::move(kraus));
}

}  // namespace

Apparatus::Apparatus(QuantumChannel channel, std::vector<OutputFactor> factors)
    : channel_(std::move(channel)), factors_(std::move(factors)) {
  if (factors_.empty()) throw ValidationError("Apparatus: need at least one output factor");
  long prod = 1;
  for (const auto& f : factors_) {
    if (f.dim <= 0) throw DimensionMismatch("Apparatus: factor dims must be positive");
    prod *= f.dim;
    if (f.kind == FactorKind::classical) {
      if (static_cast<int>(f.labels.size()) != f.dim)
        throw ValidationError("Apparatus: classical factor needs one label per basis state");
    }
  }
  if (prod != channel_.dim_out())
    throw DimensionMismatch("Apparatus: factor dims must multiply to the channel output dim");

  // Diagonality of every classical marginal, checked on the Hermitian
  // spanning set of the input space.
  const auto inputs = spanning_inputs(channel_.dim_in());
  for (int fi = 0; fi < static_cast<int>(factors_.size()); ++fi) {
    if (factors_[fi].kind != FactorKind::classical) continue;
    const QuantumChannel marg = marginal(fi);
    for (const cmat& h : inputs) {
      const cmat out = marg.apply_matrix(h);
      double off = 0.0;
      for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c)
          if (r != c) off += std::abs(out(r, c));
      if (off > tols::classical_diagonal)
        throw ValidationError("Apparatus: classical factor " + std::to_string(fi) +
                              " is not diagonal (off-diagonal mass " + std::to_string(off) + ")");
    }
  }
}

std::vector<int> Apparatus::factor_dims() const {
  std::vector<int> dims;
  dims.reserve(factors_.size());
  for (const auto& f : factors_) dims.push_back(f.dim);
  return dims;
}

std::vector<int> Apparatus::classical_factor_indices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(factors_.size()); ++i)
    if (factors_[i].kind == FactorKind::classical) out.push_back(i);
  return out;
}

int Apparatus::classical_factor(const std::vector<std::string>& labels) const {
  int found = -1;
  for (int i = 0; i < static_cast<int>(factors_.size()); ++i) {
    if (factors_[i].kind != FactorKind::classical) continue;
    if (factors_[i].labels == labels) {
      if (found >= 0)
        throw ValidationError("Apparatus: several classical factors carry these labels");
      found = i;
    }
  }
  if (found < 0)
    throw ValidationError("Apparatus: no classical factor carries the requested labels");
  return found;
}

QuantumChannel Apparatus::marginal(int factor_index) const {
  if (factor_index < 0 || factor_index >= static_cast<int>(factors_.size()))
    throw DimensionMismatch("Apparatus::marginal: factor index out of range");
  if (factors_.size() == 1) return channel_;
  return compose(trace_out_channel(factor_dims(), factor_index), channel_);
}

Apparatus ideal_measurement(const Observable& x) {
  const int d = x.dim();
  std::vector<cmat> kraus;
  for (int i = 0; i < d; ++i) {
    cmat k = cmat::Zero(d, d);
    k.row(i) = x.ket(i).adjoint();
    kraus.push_back(std::move(k));
  }
  QuantumChannel ch(d, d, std::move(kraus));
  return Apparatus(std::move(ch), {OutputFactor{d, FactorKind::classical, x.labels()}});
}

Apparatus luders_apparatus(const Observable& x) {
  const int d = x.dim();
  std::vector<cmat> kraus;
  for (int i = 0; i < d; ++i) {
    cmat ex = cmat::Zero(d, 1);
    ex(i, 0) = 1.0;
    kraus.push_back(tensor(x.projector(i), ex));
  }
  QuantumChannel ch(d, d * d, std::move(kraus));
  return Apparatus(std::move(ch), {OutputFactor{d, FactorKind::quantum, {}},
                                   OutputFactor{d, FactorKind::classical, x.labels()}});
}

Apparatus joint_apparatus(const std::vector<std::vector<cmat>>& kraus_xz,
                          const std::vector<std::string>& x_labels,
                          const std::vector<std::string>& z_labels) {
  const int dx = static_cast<int>(x_labels.size());
  const int dz = static_cast<int>(z_labels.size());
  if (static_cast<int>(kraus_xz.size()) != dx)
    throw DimensionMismatch("joint_apparatus: need one Kraus row per x label");
  for (const auto& row : kraus_xz)
    if (static_cast<int>(row.size()) != dz)
      throw DimensionMismatch("joint_apparatus: need one Kraus block per z label");
  const int r = static_cast<int>(kraus_xz[0][0].rows());
  const int din = static_cast<int>(kraus_xz[0][0].cols());
  cmat comp = cmat::Zero(din, din);
  for (const auto& row : kraus_xz)
    for (const cmat& m : row) {
      if (m.rows() != r || m.cols() != din)
        throw DimensionMismatch("joint_apparatus: all M_xz must share one shape");
      comp += m.adjoint() * m;
    }
  if ((comp - cmat::Identity(din, din)).cwiseAbs().maxCoeff() > tols::trace_preserving)
    throw ValidationError("joint_apparatus: Σ M_xz† M_xz must be the identity");

  std::vector<cmat> kraus;
  for (int x = 0; x < dx; ++x) {
    cmat ex = cmat::Zero(dx, 1);
    ex(x, 0) = 1.0;
    for (int z = 0; z < dz; ++z) {
      cmat ez = cmat::Zero(dz, 1);
      ez(z, 0) = 1.0;
      kraus.push_back(tensor(tensor(kraus_xz[x][z], ex), ez));
    }
  }
  QuantumChannel ch(din, r * dx * dz, std::move(kraus));
  return Apparatus(std::move(ch), {OutputFactor{r, FactorKind::quantum, {}},
                                   OutputFactor{dx, FactorKind::classical, x_labels},
                                   OutputFactor{dz, FactorKind::classical, z_labels}});
}

Apparatus depolarized_luders(const Observable& x, double p) {
  if (p < 0.0 || p > 1.0)
    throw ValidationError("depolarized_luders: mixing parameter must lie in [0, 1]");
  const int d = x.dim();
  const Apparatus pure = luders_apparatus(x);
  if (p == 0.0) return pure;

  std::vector<cmat> kraus;
  if (p < 1.0)
    for (const cmat& k : pure.channel().kraus()) kraus.push_back(std::sqrt(1.0 - p) * k);
  const cmat unif = cmat::Identity(d * d, d * d) / static_cast<double>(d * d);
  const QuantumChannel to_mixed = constant_channel(DensityOperator(unif), d);
  for (const cmat& k : to_mixed.kraus()) kraus.push_back(std::sqrt(p) * k);
  QuantumChannel ch(d, d * d, std::move(kraus));
  return Apparatus(std::move(ch), {OutputFactor{d, FactorKind::quantum, {}},
                                   OutputFactor{d, FactorKind::classical, x.labels()}});
}

Apparatus with_uniform_guess(const Apparatus& a, const Observable& z) {
  const int d = z.dim();
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<cmat> kraus;
  for (const cmat& k : a.channel().kraus())
    for (int i = 0; i < d; ++i) {
      cmat ez = cmat::Zero(d, 1);
      ez(i, 0) = amp;
      kraus.push_back(tensor(k, ez));
    }
  QuantumChannel ch(a.channel().dim_in(), a.channel().dim_out() * d, std::move(kraus));
  auto factors = a.factors();
  factors.push_back(OutputFactor{d, FactorKind::classical, z.labels()});
  return Apparatus(std::move(ch), std::move(factors));
}

Apparatus x_measure_z_guess(const Observable& x, const Observable& z) {
  if (x.dim() != z.dim())
    throw DimensionMismatch("x_measure_z_guess: observables must share a dimension");
  const int d = x.dim();
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<std::vector<cmat>> m(d, std::vector<cmat>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = amp * x.projector(i);
  return joint_apparatus(m, x.labels(), z.labels());
}

Apparatus mixed_ideal_joint(const Observable& x, const Observable& z, double p) {
  if (x.dim() != z.dim())
    throw DimensionMismatch("mixed_ideal_joint: observables must share a dimension");
  if (p < 0.0 || p > 1.0)
    throw ValidationError("mixed_ideal_joint: mixing parameter must lie in [0, 1]");
  const int d = x.dim();
  const double ax = std::sqrt(p / d);
  const double az = std::sqrt((1.0 - p) / d);
  // Orthogonal stacking keeps the two branches an incoherent mixture.
  std::vector<std::vector<cmat>> m(d, std::vector<cmat>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cmat blk = cmat::Zero(2 * d, d);
      blk.topRows(d) = ax * x.projector(i);
      blk.bottomRows(d) = az * z.projector(j);
      m[i][j] = std::move(blk);
    }
  return joint_apparatus(m, x.labels(), z.labels());
}

}  // namespace qdist
