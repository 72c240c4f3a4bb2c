#include "qdist/io.hpp"

#include <fstream>

namespace qdist::io {

namespace {

void require_schema(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": top level must be a JSON object");
  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
    throw ValidationError(path + ": field 'schema' must be the integer 1");
}

const json& get_field(const json& j, const char* name) {
  if (!j.contains(name))
    throw ValidationError(std::string("missing field '") + name + "'");
  return j.at(name);
}

cplx scalar_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(field + ": complex scalars are two-element arrays [re, im]");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

std::vector<std::string> labels_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field + ": must be an array");
  std::vector<std::string> out;
  for (const auto& l : j) {
    if (l.is_string())
      out.push_back(l.get<std::string>());
    else if (l.is_number_integer())
      out.push_back(std::to_string(l.get<long>()));
    else
      throw ValidationError(field + ": labels must be strings or integers");
  }
  return out;
}

}  // namespace

json matrix_to_json(const cmat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

cmat matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ValidationError(field + ": matrices are arrays of rows");
  const auto rows = j.size();
  const auto cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ValidationError(field + ": rows must be nonempty arrays");
  cmat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ValidationError(field + ": row " + std::to_string(r) + " has inconsistent length");
    for (size_t c = 0; c < cols; ++c)
      m(r, c) = scalar_from_json(j[r][c], field + "[" + std::to_string(r) + "][" +
                                              std::to_string(c) + "]");
  }
  return m;
}

json observable_to_json(const Observable& o) {
  json vecs = json::array();
  for (int i = 0; i < o.dim(); ++i) {
    json v = json::array();
    for (int k = 0; k < o.dim(); ++k) v.push_back({o.ket(i)(k).real(), o.ket(i)(k).imag()});
    vecs.push_back(std::move(v));
  }
  return json{{"schema", 1}, {"dim", o.dim()}, {"eigenvectors", vecs}, {"labels", o.labels()}};
}

Observable observable_from_json(const json& j) {
  const int d = get_field(j, "dim").get<int>();
  const json& vecs = get_field(j, "eigenvectors");
  if (!vecs.is_array() || static_cast<int>(vecs.size()) != d)
    throw ValidationError("eigenvectors: need exactly 'dim' vectors");
  std::vector<cvec> kets;
  for (int i = 0; i < d; ++i) {
    const json& vj = vecs[i];
    if (!vj.is_array() || static_cast<int>(vj.size()) != d)
      throw ValidationError("eigenvectors[" + std::to_string(i) + "]: length must equal dim");
    cvec v(d);
    for (int k = 0; k < d; ++k)
      v(k) = scalar_from_json(vj[k], "eigenvectors[" + std::to_string(i) + "]");
    kets.push_back(std::move(v));
  }
  return Observable(std::move(kets), labels_from_json(get_field(j, "labels"), "labels"));
}

json channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const cmat& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return json{
      {"schema", 1}, {"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", kraus}};
}

QuantumChannel channel_from_json(const json& j) {
  const int din = get_field(j, "dim_in").get<int>();
  const int dout = get_field(j, "dim_out").get<int>();
  const json& kj = get_field(j, "kraus");
  if (!kj.is_array() || kj.empty())
    throw ValidationError("kraus: must be a nonempty array of matrices");
  std::vector<cmat> kraus;
  for (size_t i = 0; i < kj.size(); ++i) {
    cmat k = matrix_from_json(kj[i], "kraus[" + std::to_string(i) + "]");
    if (k.rows() != dout || k.cols() != din)
      throw ValidationError("kraus[" + std::to_string(i) +
                            "]: shape must be dim_out x dim_in");
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(din, dout, std::move(kraus));
}

json apparatus_to_json(const Apparatus& a) {
  json factors = json::array();
  for (const auto& f : a.factors()) {
    json fj{{"dim", f.dim},
            {"kind", f.kind == FactorKind::classical ? "classical" : "quantum"}};
    if (f.kind == FactorKind::classical) fj["labels"] = f.labels;
    factors.push_back(std::move(fj));
  }
  return json{{"schema", 1}, {"channel", channel_to_json(a.channel())},
              {"output_factors", factors}};
}

Apparatus apparatus_from_json(const json& j) {
  if (j.contains("kraus_xz")) {
    const json& kj = j.at("kraus_xz");
    if (!kj.is_array() || kj.empty())
      throw ValidationError("kraus_xz: must be a nonempty array of matrix rows");
    std::vector<std::vector<cmat>> m;
    for (size_t x = 0; x < kj.size(); ++x) {
      if (!kj[x].is_array())
        throw ValidationError("kraus_xz[" + std::to_string(x) + "]: must be an array");
      std::vector<cmat> row;
      for (size_t z = 0; z < kj[x].size(); ++z)
        row.push_back(matrix_from_json(kj[x][z], "kraus_xz[" + std::to_string(x) + "][" +
                                                     std::to_string(z) + "]"));
      m.push_back(std::move(row));
    }
    return joint_apparatus(m, labels_from_json(get_field(j, "x_labels"), "x_labels"),
                           labels_from_json(get_field(j, "z_labels"), "z_labels"));
  }

  QuantumChannel ch = channel_from_json(get_field(j, "channel"));
  const json& fj = get_field(j, "output_factors");
  if (!fj.is_array() || fj.empty())
    throw ValidationError("output_factors: must be a nonempty array");
  std::vector<OutputFactor> factors;
  for (size_t i = 0; i < fj.size(); ++i) {
    OutputFactor f;
    f.dim = get_field(fj[i], "dim").get<int>();
    const std::string kind = get_field(fj[i], "kind").get<std::string>();
    if (kind == "quantum")
      f.kind = FactorKind::quantum;
    else if (kind == "classical")
      f.kind = FactorKind::classical;
    else
      throw ValidationError("output_factors[" + std::to_string(i) +
                            "].kind: must be 'quantum' or 'classical'");
    if (f.kind == FactorKind::classical)
      f.labels = labels_from_json(get_field(fj[i], "labels"),
                                  "output_factors[" + std::to_string(i) + "].labels");
    factors.push_back(std::move(f));
  }
  return Apparatus(std::move(ch), std::move(factors));
}

namespace {

json summary_to_json(const sdp::SdpSummary& s) {
  return json{{"primal_value", s.primal_value},
              {"dual_value", s.dual_value},
              {"gap", s.gap},
              {"iterations", s.iterations},
              {"status", sdp::to_string(s.status)}};
}

sdp::SdpSummary summary_from_json(const json& j) {
  sdp::SdpSummary s;
  s.primal_value = get_field(j, "primal_value").get<double>();
  s.dual_value = get_field(j, "dual_value").get<double>();
  s.gap = get_field(j, "gap").get<double>();
  s.iterations = get_field(j, "iterations").get<int>();
  const std::string st = get_field(j, "status").get<std::string>();
  if (st == "optimal")
    s.status = sdp::SolveStatus::optimal;
  else if (st == "max_iterations")
    s.status = sdp::SolveStatus::max_iterations;
  else
    s.status = sdp::SolveStatus::numerical_failure;
  return s;
}

}  // namespace

json report_to_json(const VerificationReport& r) {
  json components = json::object();
  for (const auto& [k, v] : r.components) components[k] = v;
  json refs = json::object();
  for (const auto& [k, v] : r.certificate_refs) refs[k] = summary_to_json(v);
  return json{{"schema", 1},     {"relation", to_string(r.relation)},
              {"lhs", r.lhs},    {"rhs", r.rhs},
              {"slack", r.slack}, {"pass", r.pass},
              {"components", components}, {"certificate_refs", refs}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  const std::string rel = get_field(j, "relation").get<std::string>();
  if (rel == "jm")
    r.relation = Relation::jm;
  else if (rel == "ed")
    r.relation = Relation::ed;
  else if (rel == "measprep")
    r.relation = Relation::measprep;
  else if (rel == "leakage")
    r.relation = Relation::leakage;
  else if (rel == "stinespring_sandwich")
    r.relation = Relation::stinespring_sandwich;
  else
    throw ValidationError("relation: unknown value '" + rel + "'");
  r.lhs = get_field(j, "lhs").get<double>();
  r.rhs = get_field(j, "rhs").get<double>();
  r.slack = get_field(j, "slack").get<double>();
  r.pass = get_field(j, "pass").get<bool>();
  for (const auto& [k, v] : get_field(j, "components").items())
    r.components[k] = v.get<double>();
  for (const auto& [k, v] : get_field(j, "certificate_refs").items())
    r.certificate_refs[k] = summary_from_json(v);
  return r;
}

Observable load_observable(const std::string& path) {
  const json j = load_json_file(path);
  require_schema(j, path);
  try {
    return observable_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

QuantumChannel load_channel(const std::string& path) {
  const json j = load_json_file(path);
  require_schema(j, path);
  try {
    return channel_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Apparatus load_apparatus(const std::string& path) {
  const json j = load_json_file(path);
  require_schema(j, path);
  try {
    return apparatus_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json problem_to_json(const sdp::SdpProblem& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks())
    blocks.push_back(json{{"dim", b.dim},
                          {"field", b.field == sdp::BlockField::complex_hermitian
                                        ? "complex_hermitian"
                                        : "real_symmetric"}});
  json objective = json::array();
  for (const cmat& c : p.objective()) objective.push_back(matrix_to_json(c));
  json constraints = json::array();
  for (int i = 0; i < p.num_constraints(); ++i) {
    json coeffs = json::object();
    for (const auto& [b, a] : p.coefficients(i)) coeffs[std::to_string(b)] = matrix_to_json(a);
    constraints.push_back(json{{"rhs", p.rhs(i)}, {"coefficients", coeffs}});
  }
  return json{{"schema", 1},
              {"sense", "maximize"},
              {"blocks", blocks},
              {"objective", objective},
              {"constraints", constraints}};
}

json solution_to_json(const sdp::SdpSolution& s) {
  json primal = json::array(), dual = json::array();
  for (const cmat& m : s.primal_certificate) primal.push_back(matrix_to_json(m));
  for (const cmat& m : s.dual_certificate) dual.push_back(matrix_to_json(m));
  std::vector<double> y(s.multipliers.data(), s.multipliers.data() + s.multipliers.size());
  return json{{"schema", 1},
              {"status", sdp::to_string(s.status)},
              {"primal_value", s.primal_value},
              {"dual_value", s.dual_value},
              {"gap", s.gap},
              {"iterations", s.iterations},
              {"primal_residual", s.primal_residual},
              {"dual_residual", s.dual_residual},
              {"primal_certificate", primal},
              {"dual_certificate", dual},
              {"multipliers", y}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  out << content;
}

}  // namespace qdist::io
