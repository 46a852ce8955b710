// observables.hpp: steady-state currents, fluctuations, entropy production
// and derived performance figures at a single parameter point.

#pragma once

#include <optional>
#include <string_view>

#include "qtur/physics.hpp"
#include "qtur/quad.hpp"

namespace qtur {

struct Observables {
    double J1{0.0};    // heat current from bath 1 into the oscillator
    double P{0.0};     // drive power into the oscillator
    double J2{0.0};    // -P - J1
    double Sdot{0.0};  // -J1/T1 - J2/T2
    double D_J1{0.0};
    double D_P{0.0};
    bool quad_converged{true};
};

enum class ModeKind { Engine, Refrigerator, Other };

struct OperatingMode {
    ModeKind kind{ModeKind::Other};
    int sign_P{0};
    int sign_J1{0};
    int sign_J2{0};
};

// Which reservoir is hot. For T1 <= T2 bath 2 is hot (the default reading);
// for T1 > T2 the roles swap and engine/refrigerator are judged on J2.
enum class HotBath { Two, One };

inline constexpr double kModeThreshold = 1e-14;

struct PerformanceMetrics {
    std::optional<double> Q_P;
    std::optional<double> Q_J1;
    std::optional<double> eta;
    std::optional<double> cop;
    std::optional<double> eta_C;
    std::optional<double> cop_C;
    std::optional<double> eta_norm;
    std::optional<double> cop_norm;
    OperatingMode mode{};
};

[[nodiscard]] HotBath hot_bath(const MachineParams& p) noexcept;

// Integrates the four kernels over a shared breakpoint set.
[[nodiscard]] Observables evaluate_point(const MachineParams& p, const QuadratureConfig& cfg);

// Engine: P < -t and (J1 < -t for a hot bath 2, J2 < -t for a hot bath 1);
// refrigerator is the mirrored sign pattern; everything else is Other.
[[nodiscard]] OperatingMode classify_mode(const Observables& obs, double threshold = kModeThreshold,
                                          HotBath hot = HotBath::Two);

[[nodiscard]] PerformanceMetrics performance(const Observables& obs, const MachineParams& p,
                                             double threshold = kModeThreshold);

[[nodiscard]] std::string_view to_string(ModeKind kind) noexcept;

}  // namespace qtur
