// io.hpp: run configuration parsing and CSV/JSON serialization.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtur/physics.hpp"
#include "qtur/quad.hpp"
#include "qtur/sweep.hpp"

namespace qtur {

enum class OutputFormat { Csv, Json };
enum class Normalize { None, Gamma2Squared };

struct RunConfig {
    MachineParams params{};
    QuadratureConfig quad{};
    OutputFormat format{OutputFormat::Csv};
    Normalize normalize{Normalize::None};
    std::string output;  // empty: standard output
};

class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& what, int line) : std::invalid_argument(what), line_(line) {}
    // 1-based line in the config text, 0 for command-line overrides.
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

using Override = std::pair<std::string, std::string>;

// Keys accepted in config files and as overrides, in documentation order.
[[nodiscard]] const std::vector<std::string>& config_keys();

// `key = value` lines, `#` comments; overrides are applied after the text.
// The resulting machine and quadrature settings are validated before returning.
[[nodiscard]] RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});

// Printf-style %.17g; non-finite values become `nan`.
[[nodiscard]] std::string format_number(double x);

// Column order of every point/sweep CSV.
[[nodiscard]] const std::vector<std::string>& table_columns();

[[nodiscard]] std::string emit_csv(const SweepTable& table, Normalize normalize);
[[nodiscard]] std::string emit_json(const SweepTable& table, Normalize normalize);
[[nodiscard]] std::string emit_table(const SweepTable& table, OutputFormat format, Normalize normalize);

// Inverse of emit_json for the fields it carries. Normalized currents are
// scaled back, so exact byte round trips are guaranteed only for
// Normalize::None output.
[[nodiscard]] SweepTable table_from_json(std::string_view json);

[[nodiscard]] std::string emit_boundaries(const ModeBoundaries& b, const SweepTable& scan, OutputFormat format);
[[nodiscard]] std::string emit_optimum(const OptimumResult& r, double Omega_lo, double Omega_hi,
                                       const MachineParams& params, const QuadratureConfig& quad,
                                       OutputFormat format);
[[nodiscard]] std::string emit_oracle(const OracleComparison& c, OutputFormat format);

// Writes to `path`, or standard output when empty. Throws std::runtime_error naming the path.
void write_output(const std::string& path, std::string_view bytes);

}  // namespace qtur
