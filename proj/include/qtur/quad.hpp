// quad.hpp: real-line integration of the spectral kernels.
//
// adaptive_integrate is a globally adaptive Gauss-Kronrod (7/15) scheme that
// starts from a caller-supplied breakpoint list and bisects the worst panel
// first. oracle_integrate is a plain composite Simpson rule kept deliberately
// separate for validation.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qtur/physics.hpp"

namespace qtur {

struct QuadratureConfig {
    double rel_tol{1e-9};
    double abs_tol{1e-16};
    std::size_t max_panels{10000};
    std::vector<double> cluster_multipliers{1.0, 3.0, 10.0, 30.0, 100.0};
    double window_factor{40.0};

    void validate() const;
};

struct IntegralResult {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t panels_used{0};
    bool converged{false};
};

// Raised when the integrand returns a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, double abscissa)
        : std::runtime_error(what), abscissa_(abscissa) {}
    [[nodiscard]] double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

using Integrand = std::function<double(double)>;

// Half-width W of the truncated integration window [-W, W].
[[nodiscard]] double integration_window(const MachineParams& p, const QuadratureConfig& cfg);

// Sorted, de-duplicated panel boundaries: {0, -Omega}, clusters around the
// chi0 peaks at +-omega0 (scale gamma2) and the shifted J_1 peaks at
// +-omega1 - Omega (scale gamma1), clipped to the window, endpoints included.
[[nodiscard]] std::vector<double> build_breakpoints(const MachineParams& p, const QuadratureConfig& cfg);

[[nodiscard]] IntegralResult adaptive_integrate(const Integrand& f, std::span<const double> breakpoints,
                                                const QuadratureConfig& cfg);

// Composite Simpson on a uniform grid over [-W, W]; the step is shrunk so the
// interval count is even.
[[nodiscard]] double oracle_integrate(const Integrand& f, double W, double h);

// min(gamma1, gamma2) / 50
[[nodiscard]] double default_oracle_step(const MachineParams& p) noexcept;

}  // namespace qtur
