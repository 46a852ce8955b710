// sweep.hpp: grid and resonance-line scans, mode boundaries, 1D metric
// optimization and comparison against the weak-damping closed forms.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtur/observables.hpp"
#include "qtur/physics.hpp"
#include "qtur/quad.hpp"

namespace qtur {

// Linear axis; count == 1 yields {min}.
struct Axis {
    std::string name;
    double min{0.0};
    double max{0.0};
    std::size_t count{1};

    [[nodiscard]] std::vector<double> values() const;
    void validate() const;
};

enum class RowMode { Engine, Refrigerator, Other, Error };

struct SweepRow {
    double Omega{0.0};
    double omega1{0.0};
    Observables obs{};
    PerformanceMetrics perf{};
    RowMode mode{RowMode::Other};
    std::optional<std::string> error;
};

enum class SweepLayout { Grid, Resonance };

struct SweepTable {
    std::vector<Axis> axes;
    std::vector<SweepRow> rows;
    MachineParams params{};
    QuadratureConfig quad{};
    SweepLayout layout{SweepLayout::Grid};

    [[nodiscard]] bool all_ok() const noexcept;
};

struct SweepOptions {
    // 0 picks std::thread::hardware_concurrency().
    unsigned threads{0};
};

[[nodiscard]] RowMode row_mode(ModeKind kind) noexcept;

// Resonance rule: omega1 = omega0 - Omega (T1 <= T2) or omega0 + Omega (T1 > T2).
// Throws UnsupportedRegime for Omega >= omega0 on the first branch.
[[nodiscard]] double resonant_omega1(const MachineParams& p, double Omega);

// Evaluates observables and metrics at one node; failures are recorded in the row.
[[nodiscard]] SweepRow evaluate_row(const MachineParams& base, double Omega, double omega1,
                                    const QuadratureConfig& cfg);

// Omega outer, omega1 inner.
[[nodiscard]] SweepTable grid_sweep(const MachineParams& base, const Axis& Omega_axis,
                                    const Axis& omega1_axis, const QuadratureConfig& cfg,
                                    const SweepOptions& opts = {});

[[nodiscard]] SweepTable resonance_scan(const MachineParams& base, const Axis& Omega_axis,
                                        const QuadratureConfig& cfg, const SweepOptions& opts = {});

struct ModeInterval {
    RowMode mode{RowMode::Other};
    double Omega_lo{0.0};
    double Omega_hi{0.0};
};

struct ModeBoundaries {
    std::vector<ModeInterval> intervals;
    std::vector<double> excluded_nodes;  // Omega of rows skipped by crossing detection
};

inline constexpr double kBoundaryTolerance = 1e-4;  // in units of omega0

// Detects sign changes of P, J1 and J2 between neighbouring rows of a 1D
// scan, refines each by bisection and labels the resulting intervals.
[[nodiscard]] ModeBoundaries find_mode_boundaries(const SweepTable& scan);

enum class Metric { Q_P, Q_J1, EtaNorm, CopNorm };

[[nodiscard]] std::optional<Metric> parse_metric(const std::string& name);
[[nodiscard]] std::string to_string(Metric metric);

class MetricUndefined : public std::runtime_error {
public:
    MetricUndefined(const std::string& what, double Omega) : std::runtime_error(what), Omega_(Omega) {}
    [[nodiscard]] double Omega() const noexcept { return Omega_; }

private:
    double Omega_;
};

struct OptimumResult {
    double Omega_opt{0.0};
    double value{0.0};
    Metric metric{Metric::Q_P};
};

// Golden-section minimization of f on [a, b] until the bracket is narrower than tol.
[[nodiscard]] double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                             double tol);

inline constexpr std::size_t kOptimizerCoarseNodes = 33;

// Minimizes Q metrics or maximizes normalized efficiency/COP along the
// resonance line inside [Omega_lo, Omega_hi].
[[nodiscard]] OptimumResult optimize_metric(const MachineParams& base, Metric metric, double Omega_lo,
                                            double Omega_hi, const QuadratureConfig& cfg);

struct OracleRow {
    double Omega{0.0};
    double omega1{0.0};
    double dev_J1{0.0};
    double dev_P{0.0};
    double dev_D_J1{0.0};
    double dev_D_P{0.0};
    bool excluded{false};
    std::optional<std::string> error;
};

struct OracleComparison {
    std::vector<OracleRow> rows;
    double max_dev_J1{0.0};
    double max_dev_P{0.0};
    double max_dev_D_J1{0.0};
    double max_dev_D_P{0.0};
    MachineParams params{};
    QuadratureConfig quad{};

    [[nodiscard]] double max_dev() const noexcept;
};

inline constexpr double kOracleExclusionRadius = 0.05;  // around Omega*, units of omega0

[[nodiscard]] OracleComparison compare_oracle(const MachineParams& base, const Axis& Omega_axis,
                                              const QuadratureConfig& cfg, const SweepOptions& opts = {});

[[nodiscard]] std::string_view to_string(RowMode mode) noexcept;

}  // namespace qtur
