#include "qtur/observables.hpp"

#include <cmath>

namespace qtur {

namespace {

int sign_of(double x, double threshold) noexcept {
    if (x < -threshold) return -1;
    if (x > threshold) return 1;
    return 0;
}

}  // namespace

HotBath hot_bath(const MachineParams& p) noexcept {
    return p.T1 > p.T2 ? HotBath::One : HotBath::Two;
}

Observables evaluate_point(const MachineParams& p, const QuadratureConfig& cfg) {
    p.validate();
    cfg.validate();
    const auto breakpoints = build_breakpoints(p, cfg);

    auto integrate = [&](KernelKind kind) {
        return adaptive_integrate([&p, kind](double w) { return kernel_eval(p, kind, w); },
                                  breakpoints, cfg);
    };
    const IntegralResult j1 = integrate(KernelKind::HeatJ1);
    const IntegralResult power = integrate(KernelKind::PowerP);
    const IntegralResult dj1 = integrate(KernelKind::FluctDJ1);
    const IntegralResult dp = integrate(KernelKind::FluctDP);

    Observables obs;
    obs.J1 = j1.value;
    obs.P = power.value;
    obs.J2 = -obs.P - obs.J1;
    obs.Sdot = -obs.J1 / p.T1 - obs.J2 / p.T2;
    obs.D_J1 = dj1.value;
    obs.D_P = dp.value;
    obs.quad_converged = j1.converged && power.converged && dj1.converged && dp.converged;
    return obs;
}

OperatingMode classify_mode(const Observables& obs, double threshold, HotBath hot) {
    OperatingMode mode;
    mode.sign_P = sign_of(obs.P, threshold);
    mode.sign_J1 = sign_of(obs.J1, threshold);
    mode.sign_J2 = sign_of(obs.J2, threshold);

    const int cold = hot == HotBath::Two ? mode.sign_J1 : mode.sign_J2;
    if (mode.sign_P < 0 && cold < 0) {
        mode.kind = ModeKind::Engine;
    } else if (mode.sign_P > 0 && cold > 0) {
        mode.kind = ModeKind::Refrigerator;
    } else {
        mode.kind = ModeKind::Other;
    }
    return mode;
}

PerformanceMetrics performance(const Observables& obs, const MachineParams& p, double threshold) {
    PerformanceMetrics out;
    const HotBath hot = hot_bath(p);
    out.mode = classify_mode(obs, threshold, hot);

    if (std::abs(obs.P) >= threshold) out.Q_P = obs.Sdot * obs.D_P / (obs.P * obs.P);
    if (std::abs(obs.J1) >= threshold) out.Q_J1 = obs.Sdot * obs.D_J1 / (obs.J1 * obs.J1);

    const double t_cold = hot == HotBath::Two ? p.T1 : p.T2;
    const double t_hot = hot == HotBath::Two ? p.T2 : p.T1;
    const double j_cold = hot == HotBath::Two ? obs.J1 : obs.J2;
    const double j_hot = hot == HotBath::Two ? obs.J2 : obs.J1;

    if (p.T1 != p.T2) {
        out.eta_C = 1.0 - t_cold / t_hot;
        out.cop_C = t_cold / (t_hot - t_cold);
    }
    if (out.mode.kind == ModeKind::Engine) {
        out.eta = -obs.P / j_hot;
        if (out.eta_C) out.eta_norm = *out.eta / *out.eta_C;
    } else if (out.mode.kind == ModeKind::Refrigerator) {
        out.cop = j_cold / obs.P;
        if (out.cop_C) out.cop_norm = *out.cop / *out.cop_C;
    }
    return out;
}

std::string_view to_string(ModeKind kind) noexcept {
    switch (kind) {
        case ModeKind::Engine: return "engine";
        case ModeKind::Refrigerator: return "refrigerator";
        case ModeKind::Other: return "other";
    }
    return "other";
}

}  // namespace qtur
