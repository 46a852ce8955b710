#include "qtur/physics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qtur {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string("parameter '") + name +
                                    "' must be finite and > 0, got " + std::to_string(value));
    }
}

}  // namespace

void MachineParams::validate() const {
    require_positive(omega0, "omega0");
    require_positive(m, "m");
    require_positive(T1, "T1");
    require_positive(T2, "T2");
    require_positive(Omega, "Omega");
    require_positive(bath1.omega1, "omega1");
    require_positive(bath1.gamma1, "gamma1");
    require_positive(bath1.d1, "d1");
    require_positive(bath2.gamma2, "gamma2");
}

double MachineParams::validity_ratio() const noexcept {
    return bath1.d1 / (bath1.gamma1 * bath1.omega1 * omega0 * omega0);
}

bool MachineParams::perturbative_warning() const noexcept {
    return validity_ratio() > kValidityThreshold;
}

double coth_stable(double y) {
    if (y == 0.0) throw std::domain_error("coth_stable: argument is zero");
    if (std::abs(y) < 1e-3) {
        const double y2 = y * y;
        return 1.0 / y + y / 3.0 - y * y2 / 45.0;
    }
    return 1.0 / std::tanh(y);
}

double spectral_density(const MachineParams& p, BathIndex bath, double omega) noexcept {
    if (bath == BathIndex::Two) return p.m * p.bath2.gamma2 * omega;
    const auto& b = p.bath1;
    const double detune = omega * omega - b.omega1 * b.omega1;
    return b.d1 * p.m * b.gamma1 * omega /
           (detune * detune + b.gamma1 * b.gamma1 * omega * omega);
}

double chi0_im(const MachineParams& p, double omega) noexcept {
    const double g = p.bath2.gamma2;
    const double detune = omega * omega - p.omega0 * p.omega0;
    return omega * g / (detune * detune + g * g * omega * omega);
}

double guard_radius(const MachineParams& p) noexcept { return 1e-8 * p.omega0; }

RegularizedFactors regularized_factors(const MachineParams& p, double omega) noexcept {
    const double eps = guard_radius(p);
    RegularizedFactors out{};

    if (std::abs(omega) < eps) {
        const double w0sq = p.omega0 * p.omega0;
        out.u = 2.0 * p.T2 * p.bath2.gamma2 / (w0sq * w0sq);
    } else {
        out.u = chi0_im(p, omega) * coth_stable(omega / (2.0 * p.T2));
    }

    const double shifted = omega + p.Omega;
    if (std::abs(shifted) < eps) {
        const auto& b = p.bath1;
        const double w1sq = b.omega1 * b.omega1;
        out.v = 2.0 * p.T1 * b.d1 * p.m * b.gamma1 / (w1sq * w1sq);
    } else {
        out.v = spectral_density(p, BathIndex::One, shifted) * coth_stable(shifted / (2.0 * p.T1));
    }
    return out;
}

double kernel_eval(const MachineParams& p, KernelKind kind, double omega) noexcept {
    const auto [u, v] = regularized_factors(p, omega);
    const double chi = chi0_im(p, omega);
    const double shifted = omega + p.Omega;
    const double j1 = spectral_density(p, BathIndex::One, shifted);
    const double prefactor = 1.0 / (4.0 * std::numbers::pi * p.m);

    switch (kind) {
        case KernelKind::HeatJ1:
            return prefactor * shifted * (v * chi - j1 * u);
        case KernelKind::PowerP:
            return -prefactor * p.Omega * (v * chi - j1 * u);
        case KernelKind::FluctDJ1:
            return prefactor * shifted * shifted * (v * u - j1 * chi);
        case KernelKind::FluctDP:
            return prefactor * p.Omega * p.Omega * (v * u - j1 * chi);
    }
    return 0.0;
}

const char* to_string(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::HeatJ1: return "HeatJ1";
        case KernelKind::PowerP: return "PowerP";
        case KernelKind::FluctDJ1: return "FluctDJ1";
        case KernelKind::FluctDP: return "FluctDP";
    }
    return "?";
}

}  // namespace qtur
