// physics.hpp: parameter types and frequency-domain kernels for the driven
// harmonic-oscillator machine (hbar = k_B = 1).

#pragma once

#include <utility>

namespace qtur {

// Structured bath with Lorentzian spectral density, dynamically coupled.
struct LorentzianBath {
    double omega1{0.65};  // peak frequency
    double gamma1{0.05};  // broadening
    double d1{1e-3};      // coupling strength (frequency^4)
};

// Statically coupled bath with Ohmic spectral density m * gamma2 * omega.
struct OhmicBath {
    double gamma2{0.01};
};

struct MachineParams {
    double omega0{1.0};
    double m{1.0};
    double T1{0.4};
    double T2{0.8};
    double Omega{0.35};
    LorentzianBath bath1{};
    OhmicBath bath2{};

    // Throws std::invalid_argument naming the first non-positive field.
    void validate() const;

    // Peak of J_1 relative to m * omega0^2: d1 / (gamma1 * omega1 * omega0^2).
    [[nodiscard]] double validity_ratio() const noexcept;

    // True when validity_ratio() exceeds the perturbative threshold.
    [[nodiscard]] bool perturbative_warning() const noexcept;
};

inline constexpr double kValidityThreshold = 0.1;

enum class KernelKind { HeatJ1, PowerP, FluctDJ1, FluctDP };

enum class BathIndex { One = 1, Two = 2 };

// coth(y) with a series branch for |y| < 1e-3. Throws std::domain_error at y = 0.
[[nodiscard]] double coth_stable(double y);

// J_1 (Lorentzian) or J_2 (Ohmic), odd in omega.
[[nodiscard]] double spectral_density(const MachineParams& p, BathIndex bath, double omega) noexcept;

// Im chi_0(omega) for constant Ohmic damping.
[[nodiscard]] double chi0_im(const MachineParams& p, double omega) noexcept;

struct RegularizedFactors {
    double u;  // chi0_im(w) * coth(w / 2T2)
    double v;  // J_1(w + Omega) * coth((w + Omega) / 2T1)
};

// Guard radius around the removable singularities at omega = 0 and omega = -Omega.
[[nodiscard]] double guard_radius(const MachineParams& p) noexcept;

[[nodiscard]] RegularizedFactors regularized_factors(const MachineParams& p, double omega) noexcept;

// Full integrand, 1/(4 pi m) included, finite at omega = 0 and omega = -Omega.
[[nodiscard]] double kernel_eval(const MachineParams& p, KernelKind kind, double omega) noexcept;

[[nodiscard]] const char* to_string(KernelKind kind) noexcept;

}  // namespace qtur
