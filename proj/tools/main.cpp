#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qdist/cli.hpp"

namespace {

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--grid", "'" + item + "' is not a number");
    }
  }
  return out;
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--tol", "expected KEY=VALUE, got '" + kv + "'");
    try {
      out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--tol", "'" + kv.substr(eq + 1) + "' is not a number");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using qdist::cli::RunConfig;

  CLI::App app{"Operational distinguishability of quantum channels and the "
               "joint-measurability / error-disturbance relations it certifies"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format, out_path, grid_spec;
  std::vector<std::string> tol_kvs;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format");
    sub->add_option("--out", out_path, "Write output to this path");
    sub->add_option("--tol", tol_kvs, "Tolerance override KEY=VALUE (gap, feas, grace)");
    sub->add_option("--seed", seed, "Seed for randomized components")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* distance = app.add_subcommand("distance", "δ(E1, E2) between two channel files");
  distance->add_option("channels", cfg.inputs, "Two channel JSON files")->expected(2);
  add_common(distance);

  CLI::App* comp =
      app.add_subcommand("complementarity", "Overlap matrix and the constants c1, c2");
  comp->add_option("observables", cfg.inputs, "Two observable JSON files")->expected(2);
  add_common(comp);

  CLI::App* verify = app.add_subcommand("verify", "Check one uncertainty relation");
  verify->add_option("relation", cfg.relation, "jm | ed | measprep | leakage")->required();
  verify->add_option("inputs", cfg.inputs, "Device file then observable file(s)")
      ->expected(2, 3);
  add_common(verify);

  CLI::App* sweep = app.add_subcommand("sweep", "CSV sweep over a device family");
  sweep->add_option("--family", cfg.family,
                    "depolarized_luders | mixed_ideal_joint | x_measure_z_guess")
      ->required();
  sweep->add_option("--grid", grid_spec, "Comma-separated parameters in [0, 1]")->required();
  sweep->add_option("observables", cfg.inputs, "Observable JSON files for X and Z")->expected(2);
  add_common(sweep);

  try {
    app.parse(argc, argv);
    if (distance->parsed()) cfg.command = RunConfig::Command::distance;
    if (comp->parsed()) cfg.command = RunConfig::Command::complementarity;
    if (verify->parsed()) cfg.command = RunConfig::Command::verify;
    if (sweep->parsed()) {
      cfg.command = RunConfig::Command::sweep;
      cfg.grid = parse_grid(grid_spec);
    }
    cfg.tolerances = parse_tols(tol_kvs);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qdist::cli::exit_input;
  }

  if (!format.empty()) cfg.format = format;
  if (!out_path.empty()) cfg.out_path = out_path;
  if (seed_set) cfg.seed = seed;

  return qdist::cli::run(cfg, std::cout, std::cerr);
}
