#include "qtur/cli.hpp"

#include <charconv>
#include <exception>

#include "qtur/limits.hpp"

namespace qtur {

namespace {

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const Axis& require_axis(const std::optional<Axis>& axis, const char* flag) {
    if (!axis) throw ValidationError(std::string("this subcommand requires ") + flag);
    return *axis;
}

void note_table_issues(const SweepTable& table, CommandResult& result) {
    for (const auto& row : table.rows) {
        if (row.error) {
            result.diagnostics.push_back("row Omega = " + format_number(row.Omega) + ": " + *row.error);
            result.exit_code = kExitNumerical;
        } else if (!row.obs.quad_converged) {
            result.diagnostics.push_back("row Omega = " + format_number(row.Omega) +
                                         ", omega1 = " + format_number(row.omega1) +
                                         ": quadrature did not converge");
            result.exit_code = kExitNumerical;
        }
    }
}

RowMode default_mode(Metric metric) {
    return metric == Metric::CopNorm ? RowMode::Refrigerator : RowMode::Engine;
}

std::pair<double, double> pick_interval(const RunConfig& cfg, const CommandArgs& args, Metric metric,
                                        CommandResult& result) {
    if (args.interval) return *args.interval;
    const Axis& axis = require_axis(args.Omega_axis, "--Omega-axis or --interval");
    const SweepTable scan = resonance_scan(cfg.params, axis, cfg.quad, SweepOptions{args.threads});
    note_table_issues(scan, result);
    const ModeBoundaries bounds = find_mode_boundaries(scan);

    const RowMode wanted = args.mode.value_or(default_mode(metric));
    const ModeInterval* best = nullptr;
    for (const auto& i : bounds.intervals) {
        if (i.mode == wanted && (!best || i.Omega_hi - i.Omega_lo > best->Omega_hi - best->Omega_lo)) best = &i;
    }
    if (!best) {
        throw ValidationError("no " + std::string(to_string(wanted)) + " interval on the resonance scan");
    }
    // Keep clear of the refined crossings, where the metric diverges or is undefined.
    const double margin = 2.0 * kBoundaryTolerance * cfg.params.omega0;
    const bool lo_is_cut = best->Omega_lo > scan.rows.front().Omega;
    const bool hi_is_cut = best->Omega_hi < scan.rows.back().Omega;
    return {best->Omega_lo + (lo_is_cut ? margin : 0.0), best->Omega_hi - (hi_is_cut ? margin : 0.0)};
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "point") return Command::Point;
    if (name == "sweep") return Command::Sweep;
    if (name == "resonance") return Command::Resonance;
    if (name == "boundaries") return Command::Boundaries;
    if (name == "optimize") return Command::Optimize;
    if (name == "oracle-compare") return Command::OracleCompare;
    return std::nullopt;
}

Axis parse_axis(const std::string& name, const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("axis '" + name + "' must be lo:hi:count");

    auto real = [&](std::string_view s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
            throw std::invalid_argument("axis '" + name + "': bad number '" + std::string(s) + "'");
        }
        return v;
    };
    const std::string_view view(spec);
    Axis axis;
    axis.name = name;
    axis.min = real(view.substr(0, c1));
    axis.max = real(view.substr(c1 + 1, c2 - c1 - 1));
    const auto count_text = view.substr(c2 + 1);
    const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), axis.count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count_text.empty()) {
        throw std::invalid_argument("axis '" + name + "': bad count '" + std::string(count_text) + "'");
    }
    axis.validate();
    return axis;
}

CommandResult run_subcommand(const RunConfig& cfg, const CommandArgs& args) {
    CommandResult result;
    const SweepOptions opts{args.threads};
    if (cfg.params.perturbative_warning()) {
        result.diagnostics.push_back("warning: J_1 peak / (m omega0^2) = " +
                                     format_number(cfg.params.validity_ratio()) +
                                     " exceeds the perturbative threshold");
    }
    try {
        switch (args.command) {
            case Command::Point: {
                SweepTable table = grid_sweep(cfg.params, Axis{"Omega", cfg.params.Omega, cfg.params.Omega, 1},
                                              Axis{"omega1", cfg.params.bath1.omega1, cfg.params.bath1.omega1, 1},
                                              cfg.quad, opts);
                note_table_issues(table, result);
                result.output = emit_table(table, cfg.format, cfg.normalize);
                break;
            }
            case Command::Sweep: {
                const Axis& Omega = require_axis(args.Omega_axis, "--Omega-axis");
                const Axis& omega1 = require_axis(args.omega1_axis, "--omega1-axis");
                SweepTable table = grid_sweep(cfg.params, Omega, omega1, cfg.quad, opts);
                note_table_issues(table, result);
                result.output = emit_table(table, cfg.format, cfg.normalize);
                break;
            }
            case Command::Resonance: {
                const Axis& Omega = require_axis(args.Omega_axis, "--Omega-axis");
                SweepTable table = resonance_scan(cfg.params, Omega, cfg.quad, opts);
                note_table_issues(table, result);
                result.output = emit_table(table, cfg.format, cfg.normalize);
                break;
            }
            case Command::Boundaries: {
                const Axis& Omega = require_axis(args.Omega_axis, "--Omega-axis");
                if (Omega.count < 2) throw ValidationError("boundaries needs an Omega axis with count >= 2");
                SweepTable scan = resonance_scan(cfg.params, Omega, cfg.quad, opts);
                note_table_issues(scan, result);
                const ModeBoundaries bounds = find_mode_boundaries(scan);
                result.output = emit_boundaries(bounds, scan, cfg.format);
                break;
            }
            case Command::Optimize: {
                if (!args.metric) throw ValidationError("optimize requires --metric");
                const auto [lo, hi] = pick_interval(cfg, args, *args.metric, result);
                const OptimumResult opt = optimize_metric(cfg.params, *args.metric, lo, hi, cfg.quad);
                result.output = emit_optimum(opt, lo, hi, cfg.params, cfg.quad, cfg.format);
                break;
            }
            case Command::OracleCompare: {
                const Axis& Omega = require_axis(args.Omega_axis, "--Omega-axis");
                const OracleComparison cmp = compare_oracle(cfg.params, Omega, cfg.quad, opts);
                for (const auto& row : cmp.rows) {
                    if (row.error) {
                        result.diagnostics.push_back("row Omega = " + format_number(row.Omega) + ": " + *row.error);
                        result.exit_code = kExitNumerical;
                    }
                }
                result.output = emit_oracle(cmp, cfg.format);
                break;
            }
        }
    } catch (const EvaluationError& e) {
        result.diagnostics.push_back(std::string("error: ") + e.what());
        result.exit_code = kExitNumerical;
        result.output.clear();
    } catch (const std::exception& e) {
        // Validation errors, unsupported regimes and undefined optimization metrics.
        result.diagnostics.push_back(std::string("error: ") + e.what());
        result.exit_code = kExitValidation;
        result.output.clear();
    }
    return result;
}

}  // namespace qtur
