#include "qdist/uncertainty.hpp"

#include <cmath>

#include "qdist/sdp/solver.hpp"

namespace qdist {

namespace {

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

// X-hat and Z-hat classical factors of a joint device: matched by labels,
// by position among the classical factors when the label sets coincide.
std::pair<int, int> resolve_joint_factors(const Apparatus& a, const Observable& x,
                                          const Observable& z) {
  const auto classical = a.classical_factor_indices();
  if (classical.size() < 2)
    throw ValidationError("verify_jm: apparatus must expose classical factors for both outcomes");
  if (x.labels() == z.labels()) {
    std::vector<int> matching;
    for (int i : classical)
      if (a.factors()[i].labels == x.labels()) matching.push_back(i);
    if (matching.size() < 2)
      throw ValidationError("verify_jm: need two classical factors with the shared labels");
    return {matching[0], matching[1]};
  }
  return {a.classical_factor(x.labels()), a.classical_factor(z.labels())};
}

sdp::DiamondResult marginal_error(const Apparatus& a, const Observable& x, int factor,
                                  const sdp::SolverOptions& options) {
  const auto& f = a.factors().at(factor);
  if (f.kind != FactorKind::classical)
    throw ValidationError("error: requested factor is not classical");
  if (static_cast<int>(f.labels.size()) != x.dim())
    throw ValidationError("error: classical factor label count must match the observable");
  return sdp::diamond_distance(a.marginal(factor), ideal_measurement(x).channel(), options);
}

}  // namespace

ComplementarityPair complementarity(const Observable& x, const Observable& z) {
  if (x.dim() != z.dim())
    throw DimensionMismatch("complementarity: observables must share a dimension");
  const int d = x.dim();
  const rmat o = overlap_matrix(x, z);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  const double min_row_max = o.rowwise().maxCoeff().minCoeff();
  const double min_col_max = o.colwise().maxCoeff().minCoeff();
  const double r_xz = inv_sqrt2 * (1.0 - min_row_max);
  const double r_zx = inv_sqrt2 * (1.0 - min_col_max);

  double worst_col = 0.0, worst_row = 0.0;
  for (int j = 0; j < d; ++j) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i) acc += positive_part(1.0 / d - o(i, j));
    worst_col = std::max(worst_col, acc);
  }
  for (int i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += positive_part(1.0 / d - o(i, j));
    worst_row = std::max(worst_row, acc);
  }

  return ComplementarityPair{x,    z,    o, r_xz, r_zx, std::max(r_xz, r_zx),
                             1.0 - worst_col, 1.0 - worst_row};
}

double error(const Apparatus& a, const Observable& x, int classical_factor,
             const sdp::SolverOptions& options) {
  return marginal_error(a, x, classical_factor, options).delta;
}

double error(const Apparatus& a, const Observable& x, const sdp::SolverOptions& options) {
  return error(a, x, a.classical_factor(x.labels()), options);
}

double disturbance(const Apparatus& a, const Observable& z, const sdp::SolverOptions& options) {
  if (a.channel().dim_in() != z.dim())
    throw DimensionMismatch("disturbance: apparatus input dim must match z");
  return 1.0 - sdp::min_constant_distance(compose(a.channel(), pinch(z)), options).delta;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::jm: return "jm";
    case Relation::ed: return "ed";
    case Relation::measprep: return "measprep";
    case Relation::leakage: return "leakage";
    case Relation::stinespring_sandwich: return "stinespring_sandwich";
  }
  return "unknown";
}

VerificationReport verify_jm(const Apparatus& a, const Observable& x, const Observable& z,
                             const sdp::SolverOptions& options, double grace) {
  const auto [fx, fz] = resolve_joint_factors(a, x, z);
  const sdp::DiamondResult ex = marginal_error(a, x, fx, options);
  const sdp::DiamondResult ez = marginal_error(a, z, fz, options);
  const ComplementarityPair pair = complementarity(x, z);

  VerificationReport rep;
  rep.relation = Relation::jm;
  rep.lhs = std::sqrt(ex.delta) + std::sqrt(ez.delta);
  rep.rhs = pair.c1;
  rep.slack = rep.lhs - rep.rhs;
  rep.pass = rep.slack >= -grace;
  rep.components = {{"eps_x", ex.delta}, {"eps_z", ez.delta}, {"c1", pair.c1}};
  rep.certificate_refs = {{"eps_x", ex.sdp}, {"eps_z", ez.sdp}};
  return rep;
}

VerificationReport verify_ed(const Apparatus& a, const Observable& x, const Observable& z,
                             const sdp::SolverOptions& options, double grace) {
  const sdp::DiamondResult ex = marginal_error(a, x, a.classical_factor(x.labels()), options);
  const sdp::ConstantFit fit =
      sdp::min_constant_distance(compose(a.channel(), pinch(z)), options);
  const double eta = 1.0 - fit.delta;
  const ComplementarityPair pair = complementarity(x, z);

  VerificationReport rep;
  rep.relation = Relation::ed;
  rep.lhs = std::sqrt(2.0) * std::sqrt(ex.delta) + eta;
  rep.rhs = pair.c2_xz;
  rep.slack = rep.lhs - rep.rhs;
  rep.pass = rep.slack >= -grace;
  rep.components = {{"eps_x", ex.delta}, {"eta_z", eta}, {"c2_xz", pair.c2_xz}};
  rep.certificate_refs = {{"eps_x", ex.sdp}, {"eta_z", fit.sdp}};
  return rep;
}

VerificationReport verify_measprep(const Apparatus& a, const Observable& x,
                                   const sdp::SolverOptions& options, double grace) {
  const sdp::DiamondResult ex = marginal_error(a, x, a.classical_factor(x.labels()), options);
  const sdp::MeasPrepFit fit = sdp::min_measprep_distance(a, x, options);

  VerificationReport rep;
  rep.relation = Relation::measprep;
  rep.lhs = std::sqrt(2.0 * ex.delta);
  rep.rhs = fit.delta;
  rep.slack = rep.lhs - rep.rhs;
  rep.pass = rep.slack >= -grace;
  rep.components = {{"eps_x", ex.delta}, {"measprep_delta", fit.delta}};
  rep.certificate_refs = {{"eps_x", ex.sdp}, {"measprep", fit.sdp}};
  return rep;
}

VerificationReport verify_leakage(const QuantumChannel& n, const Observable& x,
                                  const Observable& z, const sdp::SolverOptions& options,
                                  double grace) {
  if (n.dim_in() != x.dim() || x.dim() != z.dim())
    throw DimensionMismatch("verify_leakage: channel and observables must share the input dim");
  const sdp::RecoveryFit rec = sdp::min_recovery_measurement(n, x, options);
  const sdp::ConstantFit fit =
      sdp::min_constant_distance(compose(complement_of(n), pinch(z)), options);
  const ComplementarityPair pair = complementarity(x, z);

  VerificationReport rep;
  rep.relation = Relation::leakage;
  rep.lhs = fit.delta;
  rep.rhs = 2.0 * std::sqrt(rec.delta) + 1.0 - pair.c2_xz;
  rep.slack = rep.rhs - rep.lhs;  // bound direction: lhs <= rhs
  rep.pass = rep.slack >= -grace;
  rep.components = {{"eps", rec.delta}, {"delta_const", fit.delta}, {"c2_xz", pair.c2_xz}};
  rep.certificate_refs = {{"recovery", rec.sdp}, {"constant_fit", fit.sdp}};
  return rep;
}

VerificationReport verify_stinespring_sandwich(const QuantumChannel& e1,
                                               const QuantumChannel& e2,
                                               const sdp::SolverOptions& options,
                                               double grace) {
  const sdp::DiamondResult dist = sdp::diamond_distance(e1, e2, options);
  const IsometryAlignment al = align_isometries(stinespring_of(e1), stinespring_of(e2));

  VerificationReport rep;
  rep.relation = Relation::stinespring_sandwich;
  rep.lhs = 2.0 * dist.delta;  // ‖E1 − E2‖◇
  rep.rhs = 2.0 * al.achieved;
  rep.slack = rep.rhs - rep.lhs;  // bound direction: lhs <= rhs
  rep.pass = rep.slack >= -grace;
  rep.components = {{"delta", dist.delta}, {"achieved", al.achieved}};
  rep.certificate_refs = {{"delta", dist.sdp}};
  return rep;
}

IsometryAlignment align_isometries(const StinespringIsometry& v1,
                                   const StinespringIsometry& v2) {
  if (v1.v.cols() != v2.v.cols())
    throw DimensionMismatch("align_isometries: isometries must share the input dimension");
  if (v1.dim_out != v2.dim_out)
    throw DimensionMismatch("align_isometries: isometries must share the output dimension");
  const int b = v1.dim_out;
  const int env = std::max(v1.dim_env, v2.dim_env);

  auto pad = [&](const StinespringIsometry& v) {
    cmat out = cmat::Zero(static_cast<long>(b) * env, v.v.cols());
    for (int i = 0; i < b; ++i)
      for (int k = 0; k < v.dim_env; ++k)
        out.row(static_cast<long>(i) * env + k) = v.v.row(static_cast<long>(i) * v.dim_env + k);
    return out;
  };
  const cmat v1p = pad(v1);
  const cmat v2p = pad(v2);

  const cmat gram = partial_trace(v1p * v2p.adjoint(), {b, env}, {1});
  Eigen::JacobiSVD<cmat> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const cmat u_pro = svd.matrixV() * svd.matrixU().adjoint();

  auto achieved_of = [&](const cmat& u) {
    const cmat diff = tensor(cmat::Identity(b, b), u) * v1p - v2p;
    return diff.jacobiSvd().singularValues()(0);
  };
  const double a_pro = achieved_of(u_pro);
  const cmat u_id = cmat::Identity(env, env);
  const double a_id = achieved_of(u_id);

  if (a_id <= a_pro)
    return IsometryAlignment{u_id, a_id, IsometryAlignment::Method::identity};
  return IsometryAlignment{u_pro, a_pro, IsometryAlignment::Method::procrustes};
}

}  // namespace qdist
