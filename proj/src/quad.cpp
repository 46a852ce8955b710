#include "qtur/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

namespace qtur {

namespace {

// Gauss-Kronrod 15-point abscissae (positive half) and weights; the Gauss
// 7-point rule uses every other Kronrod node.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct WorstFirst {
    bool operator()(const Panel& lhs, const Panel& rhs) const noexcept {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a;
    }
};

double checked_eval(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand is not finite at omega = " << x;
        throw EvaluationError(os.str(), x);
    }
    return y;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked_eval(f, center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = checked_eval(f, center - dx) + checked_eval(f, center + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be >= 0");
    if (max_panels < 1) throw std::invalid_argument("max_panels must be >= 1");
    if (!(window_factor > 0.0)) throw std::invalid_argument("window_factor must be > 0");
    for (std::size_t i = 0; i < cluster_multipliers.size(); ++i) {
        if (!(cluster_multipliers[i] > 0.0)) {
            throw std::invalid_argument("cluster_multipliers must be positive");
        }
        if (i > 0 && !(cluster_multipliers[i] > cluster_multipliers[i - 1])) {
            throw std::invalid_argument("cluster_multipliers must be strictly increasing");
        }
    }
}

double integration_window(const MachineParams& p, const QuadratureConfig& cfg) {
    const double reach = std::max({p.omega0, p.bath1.omega1 + p.Omega, p.Omega});
    return reach + cfg.window_factor * std::max(p.T1, p.T2);
}

std::vector<double> build_breakpoints(const MachineParams& p, const QuadratureConfig& cfg) {
    const double W = integration_window(p, cfg);

    // Anchors survive de-duplication in preference to cluster points.
    struct Point {
        double x;
        bool anchor;
    };
    std::vector<Point> pts{{-W, true}, {W, true}, {0.0, true}, {-p.Omega, true}};

    auto add_cluster = [&](double center, double width) {
        pts.push_back({center, false});
        for (double c : cfg.cluster_multipliers) {
            pts.push_back({center - c * width, false});
            pts.push_back({center + c * width, false});
        }
    };
    add_cluster(-p.omega0, p.bath2.gamma2);
    add_cluster(p.omega0, p.bath2.gamma2);
    add_cluster(p.bath1.omega1 - p.Omega, p.bath1.gamma1);
    add_cluster(-p.bath1.omega1 - p.Omega, p.bath1.gamma1);

    std::erase_if(pts, [W](const Point& q) { return q.x < -W || q.x > W; });
    std::sort(pts.begin(), pts.end(), [](const Point& l, const Point& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.anchor && !r.anchor;
    });

    const double merge = 1e-12 * p.omega0;
    std::vector<Point> merged;
    for (const auto& q : pts) {
        if (!merged.empty() && q.x - merged.back().x <= merge) {
            if (q.anchor && !merged.back().anchor) merged.back() = q;
            continue;
        }
        merged.push_back(q);
    }

    std::vector<double> out;
    out.reserve(merged.size());
    for (const auto& q : merged) out.push_back(q.x);
    return out;
}

IntegralResult adaptive_integrate(const Integrand& f, std::span<const double> breakpoints,
                                  const QuadratureConfig& cfg) {
    if (breakpoints.size() < 2) {
        throw std::invalid_argument("adaptive_integrate: need at least two breakpoints");
    }

    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> active;
    std::vector<Panel> frozen;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) {
            throw std::invalid_argument("adaptive_integrate: breakpoints must be strictly increasing");
        }
        Panel panel = gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]);
        total += panel.value;
        error += panel.error;
        active.push(panel);
    }

    std::size_t panels = active.size();
    auto target = [&] { return std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol); };

    while (!active.empty() && error > target() && panels < cfg.max_panels) {
        const Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // No representable interior point left.
            frozen.push_back(worst);
            continue;
        }
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++panels;
    }

    // Re-sum in position order so the result does not depend on running-sum drift.
    std::vector<Panel> all = std::move(frozen);
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });

    IntegralResult result;
    for (const auto& panel : all) {
        result.value += panel.value;
        result.error_estimate += panel.error;
    }
    result.panels_used = all.size();
    result.converged =
        result.error_estimate <= std::max(cfg.rel_tol * std::abs(result.value), cfg.abs_tol);
    return result;
}

double oracle_integrate(const Integrand& f, double W, double h) {
    if (!(W > 0.0) || !(h > 0.0)) throw std::invalid_argument("oracle_integrate: W and h must be > 0");
    auto intervals = static_cast<std::size_t>(std::ceil(2.0 * W / h));
    if (intervals % 2 == 1) ++intervals;
    const double step = 2.0 * W / static_cast<double>(intervals);

    double sum = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
        const double x = -W + step * static_cast<double>(i);
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw EvaluationError("oracle_integrate: integrand is not finite", x);
        }
        const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += weight * y;
    }
    return sum * step / 3.0;
}

double default_oracle_step(const MachineParams& p) noexcept {
    return std::min(p.bath1.gamma1, p.bath2.gamma2) / 50.0;
}

}  // namespace qtur
