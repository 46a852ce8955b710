// limits.hpp: weak-damping (gamma2 -> 0) closed forms.
//
// Replacing Im chi_0 by (pi / 2 omega0) [delta(w - omega0) - delta(w + omega0)]
// reduces each spectral integral to two terms. On the resonance line
// omega1 = omega0 - Omega only the (omega0 - Omega) terms survive, and both
// trade-off parameters collapse onto Q = 2 x coth(x).

#pragma once

#include <stdexcept>

#include "qtur/physics.hpp"

namespace qtur {

// Raised when a closed form is requested outside its regime of validity.
class UnsupportedRegime : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ClosedFormPoint {
    double J1_cf{0.0};
    double P_cf{0.0};
    double J2_cf{0.0};
    double Sdot_cf{0.0};
    double D_J1_cf{0.0};
    double D_P_cf{0.0};
    double N_plus{0.0};   // N(+omega0)
    double N_minus{0.0};  // N(-omega0)
    double R_plus{0.0};   // R(+omega0)
    double R_minus{0.0};  // R(-omega0)
    double x{0.0};        // omega0/(2 T2) - (omega0 - Omega)/(2 T1)
    double Omega_star{0.0};
};

struct ResonantPoint {
    double J1{0.0};
    double P{0.0};
    double J2{0.0};
    double Sdot{0.0};
    double D_J1{0.0};
    double D_P{0.0};
    double N_tilde{0.0};  // coth((omega0-Omega)/2T1) - coth(omega0/2T2)
    double R_tilde{0.0};  // coth((omega0-Omega)/2T1) coth(omega0/2T2) - 1
    // Omega/omega0 on the engine branch, (omega0-Omega)/Omega on the
    // refrigerator branch. Zero when N_tilde vanishes exactly.
    double eta_or_cop{0.0};
    bool engine_branch{false};
};

// Argument x of the closed-form TUR law.
[[nodiscard]] double tur_argument(const MachineParams& p) noexcept;

// Two-term delta-limit forms at the given omega1. Requires Omega < omega0.
[[nodiscard]] ClosedFormPoint closed_form_observables(const MachineParams& p);

// Dominant-term forms with omega1 forced to omega0 - Omega.
[[nodiscard]] ResonantPoint resonant_dominant(const MachineParams& p);

// 2 x coth(x), exactly 2 at x = 0.
[[nodiscard]] double q_closed_form(const MachineParams& p);
[[nodiscard]] double q_of_x(double x);

// omega0 (1 - T1/T2). Requires T1 < T2.
[[nodiscard]] double turning_point(const MachineParams& p);

}  // namespace qtur
