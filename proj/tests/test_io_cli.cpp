#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "qdist/cli.hpp"
#include "qdist/io.hpp"
#include "qdist/sdp/solver.hpp"

using namespace qdist;

#ifndef QDIST_FIXTURES_DIR
#define QDIST_FIXTURES_DIR "fixtures"
#endif

namespace {

const std::string kFixtures = QDIST_FIXTURES_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(cli::RunConfig cfg) {
  std::ostringstream out, err;
  const int code = cli::run(cfg, out, err);
  return CliResult{code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("JSON round trips for the core value types") {
  testing::Rng rng(90);
  const Observable obs = testing::random_observable(rng, 3);
  const Observable obs2 = io::observable_from_json(io::observable_to_json(obs));
  for (int i = 0; i < 3; ++i)
    CHECK((obs.ket(i) - obs2.ket(i)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(obs.labels() == obs2.labels());

  const QuantumChannel ch = testing::random_channel(rng, 2, 3, 2);
  const QuantumChannel ch2 = io::channel_from_json(io::channel_to_json(ch));
  CHECK(channel_action_distance(ch, ch2) == 0.0);

  const Apparatus a = testing::random_apparatus(rng, 2, 2);
  const Apparatus a2 = io::apparatus_from_json(io::apparatus_to_json(a));
  CHECK(channel_action_distance(a.channel(), a2.channel()) == 0.0);
  CHECK(a2.factors().size() == 2);
}

TEST_CASE("verification reports round trip exactly") {
  const Observable x = Observable::computational(2);
  const Observable z = Observable::fourier(2);
  for (const VerificationReport& rep :
       {verify_jm(x_measure_z_guess(x, z), x, z), verify_ed(luders_apparatus(x), x, z),
        verify_measprep(luders_apparatus(x), x)}) {
    const VerificationReport back = io::report_from_json(io::report_to_json(rep));
    CHECK(back.relation == rep.relation);
    CHECK(back.lhs == rep.lhs);
    CHECK(back.rhs == rep.rhs);
    CHECK(back.slack == rep.slack);
    CHECK(back.pass == rep.pass);
    CHECK(back.components == rep.components);
    REQUIRE(back.certificate_refs.size() == rep.certificate_refs.size());
    for (const auto& [k, v] : rep.certificate_refs) {
      CHECK(back.certificate_refs.at(k).primal_value == v.primal_value);
      CHECK(back.certificate_refs.at(k).iterations == v.iterations);
    }
  }
}

TEST_CASE("fixtures parse and match the library constructions") {
  const Observable xc = io::load_observable(fixture("obs_qubit_computational.json"));
  const Observable xh = io::load_observable(fixture("obs_qubit_hadamard.json"));
  CHECK(xc.dim() == 2);
  CHECK((overlap_matrix(xc, xh).array() - 0.5).abs().maxCoeff() < 1e-12);

  const Observable t1 = io::load_observable(fixture("obs_qutrit_computational.json"));
  const Observable t2 = io::load_observable(fixture("obs_qutrit_fourier.json"));
  CHECK((overlap_matrix(t1, t2).array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);

  const Apparatus luders = io::load_apparatus(fixture("luders_x_qubit.apparatus.json"));
  CHECK(channel_action_distance(luders.channel(),
                                luders_apparatus(Observable::computational(2)).channel()) <
        1e-12);

  const Apparatus xmzg = io::load_apparatus(fixture("x_measure_z_guess_qubit.apparatus.json"));
  CHECK(xmzg.factors().size() == 3);

  const QuantumChannel ident = io::load_channel(fixture("unitary_pair_identity.channel.json"));
  CHECK(channel_action_distance(ident, QuantumChannel::identity(2)) == 0.0);
}

TEST_CASE("problem and solution diagnostic dumps are well-formed") {
  sdp::SdpProblem prob;
  const int b = prob.add_block(2);
  prob.add_objective(b, cmat::Identity(2, 2));
  const int c = prob.add_equality(1.0);
  prob.add_coefficient(c, b, cmat::Identity(2, 2));
  const io::json pj = io::problem_to_json(prob);
  CHECK(pj["blocks"].size() == 1);
  CHECK(pj["constraints"].size() == 1);

  const sdp::SdpSolution sol = sdp::solve(prob);
  const io::json sj = io::solution_to_json(sol);
  CHECK(sj["status"] == "optimal");
  CHECK(std::abs(sj["primal_value"].get<double>() - 1.0) < 1e-7);
}

TEST_CASE("cli distance: identical files give zero, the unitary pair gives sin(pi/4)") {
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::distance;
  cfg.inputs = {fixture("unitary_pair_identity.channel.json"),
                fixture("unitary_pair_identity.channel.json")};
  const CliResult same = run_cli(cfg);
  CHECK(same.code == cli::exit_ok);
  CHECK(same.out.find("delta                 0.000000") != std::string::npos);

  cfg.inputs[1] = fixture("unitary_pair_phase90.channel.json");
  cfg.format = "json";
  const CliResult pair = run_cli(cfg);
  CHECK(pair.code == cli::exit_ok);
  const io::json j = io::json::parse(pair.out);
  CHECK(std::abs(j["delta"].get<double>() - 0.7071067811865476) < 1e-6);
}

TEST_CASE("cli distance: mismatched dimensions name the offending field") {
  const auto qutrit = temp_file("qdist_qutrit.channel.json",
                                io::channel_to_json(QuantumChannel::identity(3)).dump());
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::distance;
  cfg.inputs = {fixture("unitary_pair_identity.channel.json"), qutrit.string()};
  const CliResult res = run_cli(cfg);
  CHECK(res.code == cli::exit_input);
  CHECK(res.err.find("dim_in") != std::string::npos);
}

TEST_CASE("cli verify: fixtures pass, reports serialize, grace is honored") {
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::verify;
  cfg.relation = "jm";
  cfg.inputs = {fixture("x_measure_z_guess_qubit.apparatus.json"),
                fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};
  const CliResult jm = run_cli(cfg);
  CHECK(jm.code == cli::exit_ok);
  CHECK(jm.out.find("pass      yes") != std::string::npos);

  cfg.relation = "ed";
  cfg.inputs = {fixture("luders_x_qubit.apparatus.json"),
                fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};
  cfg.format = "json";
  const CliResult ed = run_cli(cfg);
  CHECK(ed.code == cli::exit_ok);
  const VerificationReport rep = io::report_from_json(io::json::parse(ed.out));
  CHECK(rep.pass);
  CHECK(std::abs(rep.lhs - 1.0) < 1e-6);
  CHECK(std::abs(rep.slack) <= 1e-6);

  // The exit code tracks pass at whatever grace the caller sets.
  cfg.tolerances["grace"] = 1e-300;
  const CliResult strict = run_cli(cfg);
  const VerificationReport srep = io::report_from_json(io::json::parse(strict.out));
  CHECK(strict.code == (srep.pass ? cli::exit_ok : cli::exit_violated));
  CHECK(srep.pass == (srep.slack >= -1e-300));
}

TEST_CASE("cli verify: corrupted apparatus file exits with the input code") {
  io::json bad = io::load_json_file(fixture("luders_x_qubit.apparatus.json"));
  bad["channel"]["kraus"][0][0][0][0] = 0.5;  // breaks trace preservation
  const auto path = temp_file("qdist_bad.apparatus.json", bad.dump());
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::verify;
  cfg.relation = "ed";
  cfg.inputs = {path.string(), fixture("obs_qubit_computational.json"),
                fixture("obs_qubit_hadamard.json")};
  const CliResult res = run_cli(cfg);
  CHECK(res.code == cli::exit_input);
  CHECK(res.err.find("trace preserving") != std::string::npos);
}

TEST_CASE("cli verify: unreachable tolerance exits with the solver code") {
  // The guess fixture has irrational Kraus entries, so roundoff floors the
  // gap above 1e-30 and the solve cannot terminate optimally.
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::verify;
  cfg.relation = "jm";
  cfg.inputs = {fixture("x_measure_z_guess_qubit.apparatus.json"),
                fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};
  cfg.tolerances["gap"] = 1e-30;
  const CliResult res = run_cli(cfg);
  CHECK(res.code == cli::exit_solver);
  CHECK(res.err.find("solver status") != std::string::npos);
}

TEST_CASE("cli complementarity: values and the non-ONB rejection") {
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::complementarity;
  cfg.inputs = {fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};
  const CliResult mub = run_cli(cfg);
  CHECK(mub.code == cli::exit_ok);
  CHECK(mub.out.find("c1        0.353553") != std::string::npos);
  CHECK(mub.out.find("c2(X;Z)   1.000000") != std::string::npos);

  cfg.inputs = {fixture("obs_qubit_computational.json"),
                fixture("obs_qubit_computational.json")};
  const CliResult same = run_cli(cfg);
  CHECK(same.out.find("c1        0.000000") != std::string::npos);
  CHECK(same.out.find("c2(X;Z)   0.500000") != std::string::npos);

  io::json bad = io::load_json_file(fixture("obs_qubit_computational.json"));
  bad["eigenvectors"][1] = bad["eigenvectors"][0];
  const auto path = temp_file("qdist_bad.observable.json", bad.dump());
  cfg.inputs = {path.string(), fixture("obs_qubit_hadamard.json")};
  const CliResult res = run_cli(cfg);
  CHECK(res.code == cli::exit_input);
  CHECK(res.err.find("(0,1)") != std::string::npos);
}

TEST_CASE("cli sweep: validation and endpoint behavior") {
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::sweep;
  cfg.family = "depolarized_luders";
  cfg.inputs = {fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};

  cfg.grid = {};
  CHECK(run_cli(cfg).code == cli::exit_input);

  cfg.grid = {0.5, 1.5};
  CHECK(run_cli(cfg).code == cli::exit_input);

  cfg.grid = {0.0};
  cfg.family = "not_a_family";
  CHECK(run_cli(cfg).code == cli::exit_input);

  cfg.family = "depolarized_luders";
  const CliResult res = run_cli(cfg);
  REQUIRE(res.code == cli::exit_ok);
  std::istringstream lines(res.out);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "param,eps_x,eps_z,eta_z,c1,c2,lhs_jm,lhs_ed,slack_jm,slack_ed");
  std::getline(lines, row);
  double param, eps_x, eps_z, eta_z;
  std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &param, &eps_x, &eps_z, &eta_z);
  CHECK(param == 0.0);
  CHECK(eps_x < 1e-6);            // endpoint is the exact Lüders device
  CHECK(std::abs(eta_z - 1.0) < 1e-6);
}

TEST_CASE("cli sweep: mixed ideal joint family produces sane rows") {
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::sweep;
  cfg.family = "mixed_ideal_joint";
  cfg.grid = {0.5};
  cfg.inputs = {fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};
  const CliResult res = run_cli(cfg);
  REQUIRE(res.code == cli::exit_ok);
  std::istringstream lines(res.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  double param, eps_x, eps_z, eta_z, c1, c2, lhs_jm, lhs_ed, slack_jm, slack_ed;
  REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &param, &eps_x,
                      &eps_z, &eta_z, &c1, &c2, &lhs_jm, &lhs_ed, &slack_jm,
                      &slack_ed) == 10);
  CHECK(std::abs(eps_x - 0.25) < 1e-6);  // even mixture of ideal and uniform guess
  CHECK(std::abs(eps_z - 0.25) < 1e-6);
  CHECK(slack_jm > 0.0);
  CHECK(slack_ed > 0.0);
}

TEST_CASE("cli sweep: identical seeds give byte-identical csv") {
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::sweep;
  cfg.family = "x_measure_z_guess";
  cfg.grid = {0.0, 1.0};
  cfg.seed = 7;
  cfg.inputs = {fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};
  const CliResult a = run_cli(cfg);
  const CliResult b = run_cli(cfg);
  REQUIRE(a.code == cli::exit_ok);
  CHECK(a.out == b.out);
}

TEST_CASE("cli writes the whole output to --out without partial files") {
  const auto path = std::filesystem::temp_directory_path() / "qdist_out.json";
  std::filesystem::remove(path);
  cli::RunConfig cfg;
  cfg.command = cli::RunConfig::Command::complementarity;
  cfg.format = "json";
  cfg.out_path = path.string();
  cfg.inputs = {fixture("obs_qubit_computational.json"), fixture("obs_qubit_hadamard.json")};
  const CliResult res = run_cli(cfg);
  CHECK(res.code == cli::exit_ok);
  CHECK(res.out.empty());
  const io::json j = io::load_json_file(path.string());
  CHECK(std::abs(j["c1"].get<double>() - 0.3535533905932738) < 1e-12);

  // Failing validation must not leave an output file behind.
  std::filesystem::remove(path);
  cfg.inputs = {fixture("obs_qubit_computational.json"),
                fixture("obs_qutrit_fourier.json")};
  CHECK(run_cli(cfg).code == cli::exit_input);
  CHECK(!std::filesystem::exists(path));
}

TEST_CASE("schema violations are reported with the field name") {
  const auto no_schema = temp_file("qdist_noschema.json", "{\"dim\": 2}");
  try {
    io::load_observable(no_schema.string());
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("schema") != std::string::npos);
  }

  const auto bad_scalar = temp_file(
      "qdist_badscalar.json",
      R"({"schema":1,"dim_in":1,"dim_out":1,"kraus":[[[1.0]]]})");
  try {
    io::load_channel(bad_scalar.string());
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("kraus[0]") != std::string::npos);
  }
}
