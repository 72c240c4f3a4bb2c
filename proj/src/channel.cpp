#include "qdist/channel.hpp"

#include <cmath>

namespace qdist {

QuantumChannel::QuantumChannel(int dim_in, int dim_out, std::vector<cmat> kraus)
    : din_(dim_in), dout_(dim_out), kraus_(std::move(kraus)) {
  if (din_ <= 0 || dout_ <= 0)
    throw DimensionMismatch("QuantumChannel: dimensions must be positive");
  if (kraus_.empty()) throw ValidationError("QuantumChannel: need at least one Kraus operator");
  for (const cmat& k : kraus_) {
    if (k.rows() != dout_ || k.cols() != din_)
      throw DimensionMismatch("QuantumChannel: every Kraus operator must be dim_out x dim_in");
    if (!k.allFinite()) throw ValidationError("QuantumChannel: Kraus entries must be finite");
  }
  cmat sum = cmat::Zero(din_, din_);
  for (const cmat& k : kraus_) sum += k.adjoint() * k;
  const double dev = (sum - cmat::Identity(din_, din_)).cwiseAbs().maxCoeff();
  if (dev > tols::trace_preserving)
    throw ValidationError("QuantumChannel: not trace preserving (max deviation " +
                          std::to_string(dev) + ")");
}

cmat QuantumChannel::apply_matrix(const cmat& rho) const {
  if (rho.rows() != din_ || rho.cols() != din_)
    throw DimensionMismatch("QuantumChannel::apply: input dimension mismatch");
  cmat out = cmat::Zero(dout_, dout_);
  for (const cmat& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

QuantumChannel QuantumChannel::identity(int d) {
  return QuantumChannel(d, d, {cmat::Identity(d, d)});
}

DensityOperator apply(const QuantumChannel& ch, const DensityOperator& rho) {
  return DensityOperator(ch.apply_matrix(rho.matrix()));
}

ChoiMatrix choi_of(const QuantumChannel& ch, const Observable& input_basis) {
  if (input_basis.dim() != ch.dim_in())
    throw DimensionMismatch("choi_of: input basis dimension mismatch");
  const int din = ch.dim_in();
  // |Ω> = Σ_k |b_k> ⊗ |b_k> (unnormalized), C = Σ_K (K ⊗ 1)|Ω><Ω|(K ⊗ 1)†.
  cvec omega = cvec::Zero(static_cast<long>(din) * din);
  for (int k = 0; k < din; ++k) omega += tensor(input_basis.ket(k), input_basis.ket(k));
  const long n = static_cast<long>(ch.dim_out()) * din;
  cmat c = cmat::Zero(n, n);
  const cmat id_in = cmat::Identity(din, din);
  for (const cmat& k : ch.kraus()) {
    const cvec w = tensor(k, id_in) * omega;
    c += w * w.adjoint();
  }
  return ChoiMatrix{HermitianOperator(std::move(c)), din, ch.dim_out(), input_basis};
}

ChoiMatrix choi_of(const QuantumChannel& ch) {
  return choi_of(ch, Observable::computational(ch.dim_in()));
}

bool choi_is_cptp(const ChoiMatrix& c, double psd_tol, double marginal_tol) {
  if (hermitian_eigenvalues(c.op.matrix()).minCoeff() < -psd_tol) return false;
  const cmat marg = partial_trace(c.op.matrix(), {c.dim_out, c.dim_in}, {1});
  return (marg - cmat::Identity(c.dim_in, c.dim_in)).cwiseAbs().maxCoeff() <= marginal_tol;
}

std::vector<cmat> kraus_from_choi(const ChoiMatrix& c) {
  const auto es = hermitian_eigensystem(c.op.matrix());
  // Eigenvector v on out ⊗ in reshapes to a dim_out x dim_in matrix M with
  // M(i, k) = v(i * dim_in + k); with Ω over basis B the Kraus operator is
  // M conj(B) B†  (for the computational basis just M).
  const cmat b = c.input_basis.basis_matrix();
  const cmat undo = b.conjugate() * b.adjoint();
  std::vector<cmat> kraus;
  for (int j = 0; j < es.eigenvalues().size(); ++j) {
    const double ev = es.eigenvalues()(j);
    if (ev <= 1e-12) continue;
    cmat m(c.dim_out, c.dim_in);
    for (int i = 0; i < c.dim_out; ++i)
      for (int k = 0; k < c.dim_in; ++k) m(i, k) = es.eigenvectors()(i * c.dim_in + k, j);
    kraus.push_back(std::sqrt(ev) * m * undo);
  }
  return kraus;
}

StinespringIsometry stinespring_of(const QuantumChannel& ch) {
  const int env = static_cast<int>(ch.kraus().size());
  cmat v = cmat::Zero(static_cast<long>(ch.dim_out()) * env, ch.dim_in());
  for (int k = 0; k < env; ++k)
    for (int i = 0; i < ch.dim_out(); ++i)
      v.row(static_cast<long>(i) * env + k) = ch.kraus()[k].row(i);
  return StinespringIsometry{std::move(v), ch.dim_out(), env};
}

QuantumChannel complement_of(const QuantumChannel& ch) {
  // Kraus operators of the complement: F_i(k, j) = K_k(i, j), one per
  // output index i of the original channel.
  const int env = static_cast<int>(ch.kraus().size());
  std::vector<cmat> fk;
  fk.reserve(ch.dim_out());
  for (int i = 0; i < ch.dim_out(); ++i) {
    cmat f(env, ch.dim_in());
    for (int k = 0; k < env; ++k) f.row(k) = ch.kraus()[k].row(i);
    fk.push_back(std::move(f));
  }
  return QuantumChannel(ch.dim_in(), env, std::move(fk));
}

QuantumChannel compose(const QuantumChannel& f, const QuantumChannel& g) {
  if (g.dim_out() != f.dim_in())
    throw DimensionMismatch("compose: inner dimensions do not match");
  std::vector<cmat> kraus;
  kraus.reserve(f.kraus().size() * g.kraus().size());
  for (const cmat& kf : f.kraus())
    for (const cmat& kg : g.kraus()) kraus.push_back(kf * kg);
  return QuantumChannel(g.dim_in(), f.dim_out(), std::move(kraus));
}

QuantumChannel pinch(const Observable& z) {
  std::vector<cmat> kraus;
  for (int i = 0; i < z.dim(); ++i) kraus.push_back(z.projector(i));
  return QuantumChannel(z.dim(), z.dim(), std::move(kraus));
}

QuantumChannel constant_channel(const DensityOperator& sigma, int dim_in) {
  if (dim_in <= 0) throw DimensionMismatch("constant_channel: dim_in must be positive");
  const auto es = hermitian_eigensystem(sigma.matrix());
  std::vector<cmat> kraus;
  // K_{ij} = √p_i |s_i><b_j|; zero eigenvalues contribute nothing.
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p <= 1e-14) continue;
    const cvec s = std::sqrt(p) * es.eigenvectors().col(i);
    for (int j = 0; j < dim_in; ++j) {
      cmat k = cmat::Zero(sigma.dim(), dim_in);
      k.col(j) = s;
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(dim_in, sigma.dim(), std::move(kraus));
}

QuantumChannel conditional_preparation(const std::vector<DensityOperator>& states) {
  const int d = static_cast<int>(states.size());
  if (d == 0) throw ValidationError("conditional_preparation: need one state per label");
  const int r = states[0].dim();
  for (const auto& s : states)
    if (s.dim() != r)
      throw DimensionMismatch("conditional_preparation: states must share a dimension");
  std::vector<cmat> kraus;
  // K_{x,i} = √p_{x,i} (|v_{x,i}> ⊗ |x>) <x| : annihilates off-diagonal
  // classical inputs, maps |x><x| to ρ^x ⊗ |x><x|.
  for (int x = 0; x < d; ++x) {
    const auto es = hermitian_eigensystem(states[x].matrix());
    cvec ex = cvec::Zero(d);
    ex(x) = 1.0;
    for (int i = 0; i < r; ++i) {
      const double p = es.eigenvalues()(i);
      if (p <= 1e-14) continue;
      const cvec col = tensor(cvec(std::sqrt(p) * es.eigenvectors().col(i)), ex);
      cmat k = cmat::Zero(static_cast<long>(r) * d, d);
      k.col(x) = col;
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(d, r * d, std::move(kraus));
}

std::vector<cmat> spanning_inputs(int d) { return hermitian_basis(d); }

double channel_action_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw DimensionMismatch("channel_action_distance: dimension mismatch");
  double worst = 0.0;
  for (const cmat& h : spanning_inputs(a.dim_in())) {
    const double dev = (a.apply_matrix(h) - b.apply_matrix(h)).cwiseAbs().maxCoeff();
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace qdist
