// cli.hpp: subcommand dispatch shared by the command-line tool and tests.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtur/io.hpp"
#include "qtur/sweep.hpp"

namespace qtur {

enum class Command { Point, Sweep, Resonance, Boundaries, Optimize, OracleCompare };

struct CommandArgs {
    Command command{Command::Point};
    std::optional<Axis> Omega_axis;
    std::optional<Axis> omega1_axis;
    std::optional<Metric> metric;
    std::optional<RowMode> mode;  // which interval optimize searches
    std::optional<std::pair<double, double>> interval;
    unsigned threads{0};
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

struct CommandResult {
    std::string output;
    int exit_code{kExitOk};
    std::vector<std::string> diagnostics;  // for standard error
};

[[nodiscard]] std::optional<Command> parse_command(std::string_view name);

// "lo:hi:count"
[[nodiscard]] Axis parse_axis(const std::string& name, const std::string& spec);

// Never throws: validation problems map to exit code 1, non-converged
// integrals or per-row errors to exit code 2 (output is still produced).
[[nodiscard]] CommandResult run_subcommand(const RunConfig& cfg, const CommandArgs& args);

}  // namespace qtur
