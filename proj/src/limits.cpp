#include "qtur/limits.hpp"

#include <cmath>

namespace qtur {

namespace {

void require_below_resonance(const MachineParams& p) {
    if (!(p.Omega < p.omega0)) {
        throw UnsupportedRegime("closed forms require Omega < omega0");
    }
}

struct Thermal {
    double N;
    double R;
};

// N and R at omega = sign * omega0, in terms of positive coth arguments.
Thermal thermal_at(const MachineParams& p, int sign) {
    const double c2 = coth_stable(p.omega0 / (2.0 * p.T2));
    if (sign > 0) {
        const double c1 = coth_stable((p.omega0 + p.Omega) / (2.0 * p.T1));
        return {c1 - c2, c1 * c2 - 1.0};
    }
    const double c1 = coth_stable((p.omega0 - p.Omega) / (2.0 * p.T1));
    // coth is odd: N(-omega0) = -c1 + c2, R(-omega0) = c1 c2 - 1
    return {c2 - c1, c1 * c2 - 1.0};
}

}  // namespace

double tur_argument(const MachineParams& p) noexcept {
    return p.omega0 / (2.0 * p.T2) - (p.omega0 - p.Omega) / (2.0 * p.T1);
}

ClosedFormPoint closed_form_observables(const MachineParams& p) {
    require_below_resonance(p);
    const Thermal plus = thermal_at(p, +1);
    const Thermal minus = thermal_at(p, -1);

    const double up = p.omega0 + p.Omega;
    const double down = p.omega0 - p.Omega;
    const double k_up = spectral_density(p, BathIndex::One, up);
    const double k_down = spectral_density(p, BathIndex::One, down);
    const double pref = 1.0 / (8.0 * p.m * p.omega0);

    ClosedFormPoint out;
    out.N_plus = plus.N;
    out.N_minus = minus.N;
    out.R_plus = plus.R;
    out.R_minus = minus.R;
    out.J1_cf = pref * (up * k_up * plus.N - down * k_down * minus.N);
    out.P_cf = -pref * p.Omega * (k_up * plus.N + k_down * minus.N);
    out.D_J1_cf = pref * (up * up * k_up * plus.R + down * down * k_down * minus.R);
    out.D_P_cf = pref * p.Omega * p.Omega * (k_up * plus.R + k_down * minus.R);
    out.J2_cf = -out.P_cf - out.J1_cf;
    out.Sdot_cf = -out.J1_cf / p.T1 - out.J2_cf / p.T2;
    out.x = tur_argument(p);
    out.Omega_star = p.omega0 * (1.0 - p.T1 / p.T2);
    return out;
}

ResonantPoint resonant_dominant(const MachineParams& p) {
    require_below_resonance(p);
    MachineParams q = p;
    q.bath1.omega1 = p.omega0 - p.Omega;

    const double down = q.omega0 - q.Omega;
    const double c1 = coth_stable(down / (2.0 * q.T1));
    const double c2 = coth_stable(q.omega0 / (2.0 * q.T2));
    const double k = spectral_density(q, BathIndex::One, down);
    const double scale = k / (8.0 * q.m * q.omega0);

    ResonantPoint out;
    out.N_tilde = c1 - c2;
    out.R_tilde = c1 * c2 - 1.0;
    out.J1 = down * scale * out.N_tilde;
    out.P = q.Omega * scale * out.N_tilde;
    out.J2 = -q.omega0 * scale * out.N_tilde;
    out.Sdot = 2.0 * tur_argument(q) * out.N_tilde * scale;
    out.D_J1 = down * down * scale * out.R_tilde;
    out.D_P = q.Omega * q.Omega * scale * out.R_tilde;
    if (out.N_tilde < 0.0) {
        out.engine_branch = true;
        out.eta_or_cop = q.Omega / q.omega0;
    } else if (out.N_tilde > 0.0) {
        out.eta_or_cop = down / q.Omega;
    }
    return out;
}

double q_of_x(double x) {
    if (x == 0.0) return 2.0;
    return 2.0 * x * coth_stable(x);
}

double q_closed_form(const MachineParams& p) {
    require_below_resonance(p);
    return q_of_x(tur_argument(p));
}

double turning_point(const MachineParams& p) {
    if (!(p.T1 < p.T2)) throw UnsupportedRegime("turning point requires T1 < T2");
    return p.omega0 * (1.0 - p.T1 / p.T2);
}

}  // namespace qtur
