#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdist::cli {

// Exit-code contract, stable across versions:
//   0 success / relation passes, 1 relation violated beyond grace,
//   2 input or schema error, 3 solver failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_violated = 1;
inline constexpr int exit_input = 2;
inline constexpr int exit_solver = 3;

struct RunConfig {
  enum class Command { distance, complementarity, verify, sweep };
  Command command = Command::distance;
  std::string relation;  // verify: jm | ed | measprep | leakage
  std::vector<std::string> inputs;
  std::optional<std::string> out_path;
  std::string format;  // empty -> text (csv for sweep)
  std::map<std::string, double> tolerances;  // gap | feas | grace
  std::optional<std::uint64_t> seed;
  std::string family;  // sweep: depolarized_luders | mixed_ideal_joint | x_measure_z_guess
  std::vector<double> grid;
};

/// Validates every input before any SDP starts (fail-fast, no partial
/// output files), runs the command, and returns the exit code. Diagnostics
/// go to `err`; results go to `out` or to cfg.out_path.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qdist::cli
