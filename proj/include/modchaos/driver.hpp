#pragma once

// Config-driven command execution shared by the C API and the CLI: builds
// structures from the JSON configuration schema (builtin kinds or inline cell
// tables), runs certificates, witness searches, and simulations, and shapes
// the top-level {command, seed, config_echo, results, budgets_used} reports.

#include <cstdint>
#include <optional>
#include <string>

#include "modchaos/randproc.hpp"
#include "modchaos/serialize.hpp"

namespace modchaos::driver {

struct System {
  std::string kind;
  std::optional<RandomProcessSpec> spec;  // absent for inline structures
  std::optional<ModularStructure> structure;
  std::optional<TimeGrid> grid;

  const ModularStructure& require_structure() const;
  const RandomProcessSpec& require_spec() const;
  const TimeGrid& require_grid() const;
};

/// Builds a system from a "structure" config object. Kinds: "plus-minus-t",
/// "interval-functions", "function-family", "inline".
System build_system(const Json& structure_config);

struct CommandResult {
  Json report;
  std::string csv;   // empty when the command writes no path
  std::string svg;   // empty unless svg output was requested
  int exit_code = 0; // 0 ok, 1 verdict false / witness not found
};

CommandResult run_certify(const Json& config);
CommandResult run_witness(const Json& config);
CommandResult run_simulate(const Json& config, bool want_svg);
CommandResult run_example(int id, std::uint64_t seed, bool want_svg);

}  // namespace modchaos::driver
