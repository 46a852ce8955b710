#include "qtur/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "qtur/limits.hpp"

namespace qtur {

namespace {

// Runs task(i) for i in [0, n) on a small worker pool. Callers write results
// by index, so output order never depends on scheduling.
template <typename Task>
void parallel_for(std::size_t n, unsigned threads, Task&& task) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) task(i);
        });
    }
}

SweepRow error_row(double Omega, double omega1, std::string message) {
    SweepRow row;
    row.Omega = Omega;
    row.omega1 = omega1;
    row.mode = RowMode::Error;
    row.obs.quad_converged = false;
    row.error = std::move(message);
    return row;
}

std::optional<double> metric_value(const PerformanceMetrics& perf, Metric metric) {
    switch (metric) {
        case Metric::Q_P: return perf.Q_P;
        case Metric::Q_J1: return perf.Q_J1;
        case Metric::EtaNorm: return perf.eta_norm;
        case Metric::CopNorm: return perf.cop_norm;
    }
    return std::nullopt;
}

bool minimizes(Metric metric) { return metric == Metric::Q_P || metric == Metric::Q_J1; }

int strict_sign(double x) { return (x > 0.0) - (x < 0.0); }

double relative_deviation(double numeric, double reference) {
    if (reference == 0.0) return numeric == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(numeric - reference) / std::abs(reference);
}

}  // namespace

std::vector<double> Axis::values() const {
    validate();
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = min;
        return out;
    }
    const double step = (max - min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = min + step * static_cast<double>(i);
    out.back() = max;
    return out;
}

void Axis::validate() const {
    if (count < 1) throw std::invalid_argument("axis '" + name + "' needs count >= 1");
    if (!std::isfinite(min) || !std::isfinite(max) || max < min) {
        throw std::invalid_argument("axis '" + name + "' needs finite min <= max");
    }
}

bool SweepTable::all_ok() const noexcept {
    return std::all_of(rows.begin(), rows.end(),
                       [](const SweepRow& r) { return !r.error && r.obs.quad_converged; });
}

RowMode row_mode(ModeKind kind) noexcept {
    switch (kind) {
        case ModeKind::Engine: return RowMode::Engine;
        case ModeKind::Refrigerator: return RowMode::Refrigerator;
        case ModeKind::Other: return RowMode::Other;
    }
    return RowMode::Other;
}

std::string_view to_string(RowMode mode) noexcept {
    switch (mode) {
        case RowMode::Engine: return "engine";
        case RowMode::Refrigerator: return "refrigerator";
        case RowMode::Other: return "other";
        case RowMode::Error: return "error";
    }
    return "error";
}

double resonant_omega1(const MachineParams& p, double Omega) {
    if (p.T1 > p.T2) return p.omega0 + Omega;
    if (!(Omega < p.omega0)) {
        throw UnsupportedRegime("resonance omega1 = omega0 - Omega needs Omega < omega0");
    }
    return p.omega0 - Omega;
}

SweepRow evaluate_row(const MachineParams& base, double Omega, double omega1, const QuadratureConfig& cfg) {
    MachineParams p = base;
    p.Omega = Omega;
    p.bath1.omega1 = omega1;
    try {
        SweepRow row;
        row.Omega = Omega;
        row.omega1 = omega1;
        row.obs = evaluate_point(p, cfg);
        row.perf = performance(row.obs, p);
        row.mode = row_mode(row.perf.mode.kind);
        return row;
    } catch (const std::exception& e) {
        return error_row(Omega, omega1, e.what());
    }
}

SweepTable grid_sweep(const MachineParams& base, const Axis& Omega_axis, const Axis& omega1_axis,
                      const QuadratureConfig& cfg, const SweepOptions& opts) {
    const auto omegas = Omega_axis.values();
    const auto omega1s = omega1_axis.values();

    SweepTable table;
    table.axes = {Omega_axis, omega1_axis};
    table.params = base;
    table.quad = cfg;
    table.layout = SweepLayout::Grid;
    table.rows.resize(omegas.size() * omega1s.size());

    parallel_for(table.rows.size(), opts.threads, [&](std::size_t i) {
        const double Omega = omegas[i / omega1s.size()];
        const double omega1 = omega1s[i % omega1s.size()];
        table.rows[i] = evaluate_row(base, Omega, omega1, cfg);
    });
    return table;
}

SweepTable resonance_scan(const MachineParams& base, const Axis& Omega_axis, const QuadratureConfig& cfg,
                          const SweepOptions& opts) {
    const auto omegas = Omega_axis.values();

    SweepTable table;
    table.axes = {Omega_axis};
    table.params = base;
    table.quad = cfg;
    table.layout = SweepLayout::Resonance;
    table.rows.resize(omegas.size());

    parallel_for(omegas.size(), opts.threads, [&](std::size_t i) {
        const double Omega = omegas[i];
        double omega1 = std::numeric_limits<double>::quiet_NaN();
        try {
            omega1 = resonant_omega1(base, Omega);
        } catch (const std::exception& e) {
            table.rows[i] = error_row(Omega, omega1, e.what());
            return;
        }
        table.rows[i] = evaluate_row(base, Omega, omega1, cfg);
    });
    return table;
}

ModeBoundaries find_mode_boundaries(const SweepTable& scan) {
    if (scan.rows.size() < 2) throw std::invalid_argument("find_mode_boundaries: need at least two rows");

    std::function<double(double)> omega1_at;
    if (scan.layout == SweepLayout::Resonance) {
        omega1_at = [&](double Omega) { return resonant_omega1(scan.params, Omega); };
    } else {
        if (scan.axes.size() != 2 || scan.axes[1].count != 1) {
            throw std::invalid_argument("find_mode_boundaries: grid scans must hold omega1 fixed");
        }
        const double fixed = scan.rows.front().omega1;
        omega1_at = [fixed](double) { return fixed; };
    }
    auto evaluate = [&](double Omega) { return evaluate_row(scan.params, Omega, omega1_at(Omega), scan.quad); };

    ModeBoundaries out;
    std::vector<const SweepRow*> usable;
    for (const auto& row : scan.rows) {
        if (row.error || !row.obs.quad_converged) {
            out.excluded_nodes.push_back(row.Omega);
        } else {
            usable.push_back(&row);
        }
    }
    if (usable.empty()) return out;

    const double tol = kBoundaryTolerance * scan.params.omega0;
    using Getter = double (*)(const Observables&);
    const Getter quantities[] = {[](const Observables& o) { return o.P; },
                                 [](const Observables& o) { return o.J1; },
                                 [](const Observables& o) { return o.J2; }};

    std::vector<double> cuts;
    for (std::size_t i = 0; i + 1 < usable.size(); ++i) {
        const SweepRow& a = *usable[i];
        const SweepRow& b = *usable[i + 1];
        for (Getter get : quantities) {
            const int sa = strict_sign(get(a.obs));
            const int sb = strict_sign(get(b.obs));
            if (sa * sb >= 0) continue;
            double lo = a.Omega;
            double hi = b.Omega;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const SweepRow probe = evaluate(mid);
                if (probe.error) break;
                const int sm = strict_sign(get(probe.obs));
                if (sm == 0) {
                    lo = hi = mid;
                } else if (sm == sa) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            cuts.push_back(0.5 * (lo + hi));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double first = usable.front()->Omega;
    const double last = usable.back()->Omega;
    std::vector<double> edges{first};
    for (double c : cuts) {
        if (c > first && c < last) edges.push_back(c);
    }
    edges.push_back(last);

    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double lo = edges[k];
        const double hi = edges[k + 1];
        std::optional<RowMode> mode;
        for (const SweepRow* row : usable) {
            const bool on_cut = (k > 0 && row->Omega == lo) || (k + 2 < edges.size() && row->Omega == hi);
            if (row->Omega >= lo && row->Omega <= hi && !on_cut) {
                mode = row->mode;
                break;
            }
        }
        if (!mode) mode = evaluate(0.5 * (lo + hi)).mode;
        if (!out.intervals.empty() && out.intervals.back().mode == *mode) {
            out.intervals.back().Omega_hi = hi;
        } else {
            out.intervals.push_back({*mode, lo, hi});
        }
    }
    return out;
}

std::optional<Metric> parse_metric(const std::string& name) {
    if (name == "Q_P") return Metric::Q_P;
    if (name == "Q_J1") return Metric::Q_J1;
    if (name == "eta_norm") return Metric::EtaNorm;
    if (name == "cop_norm") return Metric::CopNorm;
    return std::nullopt;
}

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::Q_P: return "Q_P";
        case Metric::Q_J1: return "Q_J1";
        case Metric::EtaNorm: return "eta_norm";
        case Metric::CopNorm: return "cop_norm";
    }
    return "?";
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

OptimumResult optimize_metric(const MachineParams& base, Metric metric, double Omega_lo, double Omega_hi,
                              const QuadratureConfig& cfg) {
    if (!(Omega_hi > Omega_lo)) throw std::invalid_argument("optimize_metric: empty interval");

    const double sense = minimizes(metric) ? 1.0 : -1.0;
    auto objective = [&](double Omega) {
        MachineParams p = base;
        p.Omega = Omega;
        p.bath1.omega1 = resonant_omega1(base, Omega);
        const auto perf = performance(evaluate_point(p, cfg), p);
        const auto value = metric_value(perf, metric);
        if (!value) {
            throw MetricUndefined(to_string(metric) + " is undefined at Omega = " + std::to_string(Omega), Omega);
        }
        return sense * *value;
    };

    const Axis coarse{"Omega", Omega_lo, Omega_hi, kOptimizerCoarseNodes};
    const auto nodes = coarse.values();
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = objective(nodes[i]);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }

    const double a = nodes[best == 0 ? 0 : best - 1];
    const double b = nodes[std::min(best + 1, nodes.size() - 1)];
    const double refined = golden_section_minimize(objective, a, b, kBoundaryTolerance * base.omega0);
    const double refined_value = objective(refined);

    OptimumResult out;
    out.metric = metric;
    if (refined_value <= best_value) {
        out.Omega_opt = refined;
        out.value = sense * refined_value;
    } else {
        out.Omega_opt = nodes[best];
        out.value = sense * best_value;
    }
    return out;
}

double OracleComparison::max_dev() const noexcept {
    return std::max({max_dev_J1, max_dev_P, max_dev_D_J1, max_dev_D_P});
}

OracleComparison compare_oracle(const MachineParams& base, const Axis& Omega_axis, const QuadratureConfig& cfg,
                                const SweepOptions& opts) {
    const double Omega_star = turning_point(base);
    const SweepTable scan = resonance_scan(base, Omega_axis, cfg, opts);

    OracleComparison out;
    out.params = base;
    out.quad = cfg;
    for (const auto& row : scan.rows) {
        OracleRow o;
        o.Omega = row.Omega;
        o.omega1 = row.omega1;
        o.excluded = std::abs(row.Omega - Omega_star) < kOracleExclusionRadius * base.omega0;
        if (row.error) {
            o.error = row.error;
            out.rows.push_back(o);
            continue;
        }
        MachineParams p = base;
        p.Omega = row.Omega;
        p.bath1.omega1 = row.omega1;
        const ClosedFormPoint cf = closed_form_observables(p);
        o.dev_J1 = relative_deviation(row.obs.J1, cf.J1_cf);
        o.dev_P = relative_deviation(row.obs.P, cf.P_cf);
        o.dev_D_J1 = relative_deviation(row.obs.D_J1, cf.D_J1_cf);
        o.dev_D_P = relative_deviation(row.obs.D_P, cf.D_P_cf);
        if (!o.excluded) {
            out.max_dev_J1 = std::max(out.max_dev_J1, o.dev_J1);
            out.max_dev_P = std::max(out.max_dev_P, o.dev_P);
            out.max_dev_D_J1 = std::max(out.max_dev_D_J1, o.dev_D_J1);
            out.max_dev_D_P = std::max(out.max_dev_D_P, o.dev_D_P);
        }
        out.rows.push_back(o);
    }
    return out;
}

}  // namespace qtur
