#include "qdist/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "qdist/io.hpp"

namespace qdist::cli {

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Tolerances {
  sdp::SolverOptions solver;
  double grace = tols::verify_grace;
};

Tolerances resolve_tolerances(const RunConfig& cfg) {
  Tolerances t;
  for (const auto& [key, value] : cfg.tolerances) {
    if (value <= 0.0) throw ValidationError("--tol " + key + ": value must be positive");
    if (key == "gap")
      t.solver.gap_tol = value;
    else if (key == "feas")
      t.solver.feas_tol = value;
    else if (key == "grace")
      t.grace = value;
    else
      throw ValidationError("--tol: unknown key '" + key + "' (known: gap, feas, grace)");
  }
  return t;
}

std::string render_matrix_text(const cmat& m) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += "  ";
      if (m.imag().cwiseAbs().maxCoeff() == 0.0)
        out += fmt6(m(r, c).real());
      else
        out += fmt6(m(r, c).real()) + (m(r, c).imag() < 0 ? "-" : "+") +
               fmt6(std::abs(m(r, c).imag())) + "i";
    }
    out += "\n";
  }
  return out;
}

void check_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  if (cfg.format.empty()) return;
  for (const char* a : allowed)
    if (cfg.format == a) return;
  throw ValidationError("--format: '" + cfg.format + "' is not valid for this command");
}

void require_inputs(const RunConfig& cfg, size_t n, const char* what) {
  if (cfg.inputs.size() != n)
    throw ValidationError(std::string(what) + ": expected " + std::to_string(n) +
                          " input file(s), got " + std::to_string(cfg.inputs.size()));
}

int emit(const RunConfig& cfg, std::ostream& out, const std::string& payload) {
  if (cfg.out_path) {
    io::write_text_file(*cfg.out_path, payload);
  } else {
    out << payload;
  }
  return exit_ok;
}

int cmd_distance(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg, {"text", "json"});
  require_inputs(cfg, 2, "distance");
  const Tolerances tol = resolve_tolerances(cfg);
  const QuantumChannel e1 = io::load_channel(cfg.inputs[0]);
  const QuantumChannel e2 = io::load_channel(cfg.inputs[1]);
  if (e1.dim_in() != e2.dim_in())
    throw ValidationError(cfg.inputs[1] + ": dim_in " + std::to_string(e2.dim_in()) +
                          " does not match " + std::to_string(e1.dim_in()));
  if (e1.dim_out() != e2.dim_out())
    throw ValidationError(cfg.inputs[1] + ": dim_out " + std::to_string(e2.dim_out()) +
                          " does not match " + std::to_string(e1.dim_out()));

  const sdp::DiamondResult res = sdp::diamond_distance(e1, e2, tol.solver);
  const double tr_out_norm = operator_norm_hermitian(
      partial_trace(res.dual_R.matrix(), {e1.dim_out(), e1.dim_in()}, {1}));

  if (cfg.format == "json") {
    io::json j{{"schema", 1},
               {"delta", res.delta},
               {"primal_value", res.sdp.primal_value},
               {"dual_value", res.sdp.dual_value},
               {"gap", res.sdp.gap},
               {"iterations", res.sdp.iterations},
               {"status", sdp::to_string(res.sdp.status)},
               {"dual_R_trace_out_norm", tr_out_norm},
               {"primal_rho", io::matrix_to_json(res.primal_rho.matrix())},
               {"dual_R", io::matrix_to_json(res.dual_R.matrix())}};
    return emit(cfg, out, j.dump(2) + "\n");
  }
  std::string text;
  text += "delta                 " + fmt6(res.delta) + "\n";
  text += "primal_value          " + fmt6(res.sdp.primal_value) + "\n";
  text += "dual_value            " + fmt6(res.sdp.dual_value) + "\n";
  text += "duality_gap           " + fmt6(res.sdp.gap) + "\n";
  text += "iterations            " + std::to_string(res.sdp.iterations) + "\n";
  text += "status                " + std::string(sdp::to_string(res.sdp.status)) + "\n";
  text += "dual certificate      ||Tr_out R|| = " + fmt6(tr_out_norm) + "\n";
  text += "primal certificate    Tr Y = " + fmt6(res.primal_Y.matrix().trace().real()) + "\n";
  return emit(cfg, out, text);
}

int cmd_complementarity(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg, {"text", "json"});
  require_inputs(cfg, 2, "complementarity");
  const Observable x = io::load_observable(cfg.inputs[0]);
  const Observable z = io::load_observable(cfg.inputs[1]);
  const ComplementarityPair pair = complementarity(x, z);

  if (cfg.format == "json") {
    io::json overlaps = io::json::array();
    for (int r = 0; r < pair.overlaps.rows(); ++r) {
      io::json row = io::json::array();
      for (int c = 0; c < pair.overlaps.cols(); ++c) row.push_back(pair.overlaps(r, c));
      overlaps.push_back(std::move(row));
    }
    io::json j{{"schema", 1}, {"overlaps", overlaps}, {"r_xz", pair.r_xz},
               {"r_zx", pair.r_zx}, {"c1", pair.c1},  {"c2_xz", pair.c2_xz},
               {"c2_zx", pair.c2_zx}};
    return emit(cfg, out, j.dump(2) + "\n");
  }
  std::string text = "overlap matrix |<phi_x|theta_z>|^2\n";
  text += render_matrix_text(pair.overlaps.cast<cplx>());
  text += "r(X;Z)    " + fmt6(pair.r_xz) + "\n";
  text += "r(Z;X)    " + fmt6(pair.r_zx) + "\n";
  text += "c1        " + fmt6(pair.c1) + "\n";
  text += "c2(X;Z)   " + fmt6(pair.c2_xz) + "\n";
  text += "c2(Z;X)   " + fmt6(pair.c2_zx) + "\n";
  return emit(cfg, out, text);
}

std::string render_report_text(const VerificationReport& rep) {
  std::string text;
  text += "relation  " + std::string(to_string(rep.relation)) + "\n";
  text += "lhs       " + fmt6(rep.lhs) + "\n";
  text += "rhs       " + fmt6(rep.rhs) + "\n";
  text += "slack     " + fmt6(rep.slack) + "\n";
  text += std::string("pass      ") + (rep.pass ? "yes" : "no") + "\n";
  for (const auto& [k, v] : rep.components) text += "  " + k + " = " + fmt6(v) + "\n";
  return text;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg, {"text", "json"});
  const Tolerances tol = resolve_tolerances(cfg);

  VerificationReport rep;
  if (cfg.relation == "jm" || cfg.relation == "ed") {
    require_inputs(cfg, 3, "verify");
    const Apparatus a = io::load_apparatus(cfg.inputs[0]);
    const Observable x = io::load_observable(cfg.inputs[1]);
    const Observable z = io::load_observable(cfg.inputs[2]);
    rep = cfg.relation == "jm" ? verify_jm(a, x, z, tol.solver, tol.grace)
                               : verify_ed(a, x, z, tol.solver, tol.grace);
  } else if (cfg.relation == "measprep") {
    require_inputs(cfg, 2, "verify");
    const Apparatus a = io::load_apparatus(cfg.inputs[0]);
    const Observable x = io::load_observable(cfg.inputs[1]);
    rep = verify_measprep(a, x, tol.solver, tol.grace);
  } else if (cfg.relation == "leakage") {
    require_inputs(cfg, 3, "verify");
    const QuantumChannel n = io::load_channel(cfg.inputs[0]);
    const Observable x = io::load_observable(cfg.inputs[1]);
    const Observable z = io::load_observable(cfg.inputs[2]);
    rep = verify_leakage(n, x, z, tol.solver, tol.grace);
  } else {
    throw ValidationError("verify: unknown relation '" + cfg.relation +
                          "' (known: jm, ed, measprep, leakage)");
  }

  const std::string payload = cfg.format == "json" ? io::report_to_json(rep).dump(2) + "\n"
                                                   : render_report_text(rep);
  emit(cfg, out, payload);
  return rep.pass ? exit_ok : exit_violated;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg, {"csv"});
  require_inputs(cfg, 2, "sweep");
  if (cfg.grid.empty()) throw ValidationError("sweep: parameter grid must be nonempty");
  for (double p : cfg.grid)
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("sweep: grid value " + fmtg(p) + " outside [0, 1]");
  const Tolerances tol = resolve_tolerances(cfg);
  const Observable x = io::load_observable(cfg.inputs[0]);
  const Observable z = io::load_observable(cfg.inputs[1]);
  if (x.dim() != z.dim()) throw ValidationError("sweep: observables must share a dimension");

  auto build = [&](double p) -> Apparatus {
    if (cfg.family == "depolarized_luders") return with_uniform_guess(depolarized_luders(x, p), z);
    if (cfg.family == "mixed_ideal_joint") return mixed_ideal_joint(x, z, p);
    if (cfg.family == "x_measure_z_guess") return x_measure_z_guess(x, z);
    throw ValidationError("sweep: unknown family '" + cfg.family +
                          "' (known: depolarized_luders, mixed_ideal_joint, x_measure_z_guess)");
  };
  build(cfg.grid.front());  // family id validated before any SDP starts

  const ComplementarityPair pair = complementarity(x, z);
  std::string csv = "param,eps_x,eps_z,eta_z,c1,c2,lhs_jm,lhs_ed,slack_jm,slack_ed\n";
  for (double p : cfg.grid) {
    const Apparatus a = build(p);
    const auto classical = a.classical_factor_indices();
    const double eps_x = error(a, x, classical.at(0), tol.solver);
    const double eps_z = error(a, z, classical.at(1), tol.solver);
    const double eta_z = disturbance(a, z, tol.solver);
    const double lhs_jm = std::sqrt(eps_x) + std::sqrt(eps_z);
    const double lhs_ed = std::sqrt(2.0) * std::sqrt(eps_x) + eta_z;
    csv += fmtg(p) + "," + fmtg(eps_x) + "," + fmtg(eps_z) + "," + fmtg(eta_z) + "," +
           fmtg(pair.c1) + "," + fmtg(pair.c2_xz) + "," + fmtg(lhs_jm) + "," + fmtg(lhs_ed) +
           "," + fmtg(lhs_jm - pair.c1) + "," + fmtg(lhs_ed - pair.c2_xz) + "\n";
  }
  return emit(cfg, out, csv);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case RunConfig::Command::distance: return cmd_distance(cfg, out);
      case RunConfig::Command::complementarity: return cmd_complementarity(cfg, out);
      case RunConfig::Command::verify: return cmd_verify(cfg, out);
      case RunConfig::Command::sweep: return cmd_sweep(cfg, out);
    }
    err << "error: unknown command\n";
    return exit_input;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return exit_solver;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  }
}

}  // namespace qdist::cli
