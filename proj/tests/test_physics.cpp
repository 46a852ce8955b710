#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qtur/physics.hpp"
#include "reference_kernels.hpp"

using namespace qtur;

namespace {

MachineParams fig2(double Omega = 0.35, double omega1 = 0.65) {
    MachineParams p;
    p.Omega = Omega;
    p.bath1.omega1 = omega1;
    return p;
}

}  // namespace

TEST_CASE("coth_stable values and branches") {
    CHECK(coth_stable(1.0) == doctest::Approx(1.3130352854993312).epsilon(1e-15));
    CHECK(coth_stable(-1.0) == -coth_stable(1.0));
    CHECK(coth_stable(1e-6) == doctest::Approx(1.0e6 + 1e-6 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)coth_stable(0.0), std::domain_error);

    // series and direct formula agree at the switch point
    const double y = 1e-3;
    const double direct = std::cosh(y) / std::sinh(y);
    CHECK(std::abs(coth_stable(std::nextafter(y, 0.0)) - direct) / direct < 1e-12);
    CHECK(std::abs(coth_stable(y) - direct) / direct < 1e-12);
}

TEST_CASE("spectral densities") {
    const MachineParams p = fig2();
    CHECK(spectral_density(p, BathIndex::One, 0.65) == doctest::Approx(1e-3 / (0.05 * 0.65)).epsilon(1e-14));
    CHECK(spectral_density(p, BathIndex::One, 0.65) == doctest::Approx(0.0307692307692).epsilon(1e-11));
    CHECK(spectral_density(p, BathIndex::One, 0.0) == 0.0);
    CHECK(spectral_density(p, BathIndex::One, -0.65) == -spectral_density(p, BathIndex::One, 0.65));
    CHECK(spectral_density(p, BathIndex::Two, 2.0) == doctest::Approx(0.02));
}

TEST_CASE("chi0_im") {
    const MachineParams p = fig2();
    CHECK(chi0_im(p, 1.0) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(chi0_im(p, 0.0) == 0.0);
    CHECK(chi0_im(p, -1.0) == -chi0_im(p, 1.0));
}

TEST_CASE("odd symmetry and positivity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> omega(-40.0, 40.0);
    const MachineParams p = fig2();
    for (int i = 0; i < 2000; ++i) {
        const double w = omega(rng);
        CHECK(spectral_density(p, BathIndex::One, -w) == -spectral_density(p, BathIndex::One, w));
        CHECK(spectral_density(p, BathIndex::Two, -w) == -spectral_density(p, BathIndex::Two, w));
        CHECK(chi0_im(p, -w) == -chi0_im(p, w));
        const double a = std::abs(w);
        if (a > 0.0) {
            CHECK(chi0_im(p, a) > 0.0);
            CHECK(spectral_density(p, BathIndex::One, a) > 0.0);
            CHECK(spectral_density(p, BathIndex::Two, a) > 0.0);
        }
    }
}

TEST_CASE("regularized factors at the guarded points") {
    MachineParams p = fig2();
    const auto at_zero = regularized_factors(p, 0.0);
    CHECK(at_zero.u == doctest::Approx(0.016).epsilon(1e-14));
    const auto at_shift = regularized_factors(p, -p.Omega);
    CHECK(at_shift.v == doctest::Approx(2.0 * 0.4 * 1e-3 * 0.05 / std::pow(0.65, 4)).epsilon(1e-14));
    CHECK(at_shift.v == doctest::Approx(2.2408178985329645e-4).epsilon(1e-12));

    // 100 coth(0.625), high-precision reference
    CHECK(regularized_factors(p, 1.0).u == doctest::Approx(180.31022369860258).epsilon(1e-13));
}

TEST_CASE("kernel examples") {
    const MachineParams p = fig2();
    CHECK(kernel_eval(p, KernelKind::HeatJ1, -p.Omega) == 0.0);

    const double j_at_Omega = spectral_density(p, BathIndex::One, p.Omega);
    const double expected = -p.Omega * j_at_Omega * 2.0 * p.T2 * p.bath2.gamma2 / (4.0 * M_PI);
    CHECK(kernel_eval(p, KernelKind::HeatJ1, 0.0) == doctest::Approx(expected).epsilon(1e-13));

    // 40-digit evaluation of -Omega J1(w+Omega) N(w) chi''(w) / 4 pi m at w = 0.5
    CHECK(kernel_eval(p, KernelKind::PowerP, 0.5) == doctest::Approx(2.329035475855544701e-7).epsilon(1e-13));
    CHECK(kernel_eval(p, KernelKind::HeatJ1, 0.5) == doctest::Approx(-5.656229012792037131e-7).epsilon(1e-13));
    CHECK(kernel_eval(p, KernelKind::FluctDJ1, 0.5) == doctest::Approx(7.569554578973215500e-7).epsilon(1e-13));
    CHECK(kernel_eval(p, KernelKind::FluctDP, 0.5) == doctest::Approx(1.283419288476427542e-7).epsilon(1e-13));

    MachineParams undriven = fig2();
    undriven.T1 = undriven.T2 = 0.5;
    undriven.Omega = 0.0;
    for (double w : {-2.0, -0.3, 0.0, 0.7, 5.0}) CHECK(kernel_eval(undriven, KernelKind::FluctDP, w) == 0.0);
}

TEST_CASE("regularized kernels match the naive transcription away from singular points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> omega(-6.0, 6.0);
    const MachineParams p = fig2();
    for (int i = 0; i < 4000; ++i) {
        const double w = omega(rng);
        if (std::abs(w) < 1e-3 || std::abs(w + p.Omega) < 1e-3) continue;
        const auto [u, v] = regularized_factors(p, w);
        const double j = spectral_density(p, BathIndex::One, w + p.Omega);
        const double chi = chi0_im(p, w);
        const double pref = 1.0 / (4.0 * M_PI * p.m);
        // Cancellation inside N and R is common to both routes; compare on
        // the scale of the individual products.
        const double heat_scale = pref * std::abs(w + p.Omega) * (std::abs(v * chi) + std::abs(j * u));
        const double fluct_scale = pref * (w + p.Omega) * (w + p.Omega) * (std::abs(v * u) + std::abs(j * chi));
        CHECK(std::abs(kernel_eval(p, KernelKind::HeatJ1, w) -
                       testing::ref_kernel(p, KernelKind::HeatJ1, w)) <= 1e-12 * heat_scale);
        CHECK(std::abs(kernel_eval(p, KernelKind::FluctDJ1, w) -
                       testing::ref_kernel(p, KernelKind::FluctDJ1, w)) <= 1e-12 * fluct_scale);
    }
}

TEST_CASE("kernels are continuous across the guards") {
    const MachineParams p = fig2();
    const double eps = guard_radius(p);
    for (auto kind : testing::kAllKernels) {
        for (double center : {0.0, -p.Omega}) {
            const double at = kernel_eval(p, kind, center);
            // The heat kernels vanish at -Omega, so measure against the local magnitude.
            const double scale = std::abs(at) + std::abs(kernel_eval(p, kind, center + 1e-2));
            for (double x : {center - eps, center + eps}) {
                CHECK(std::abs(kernel_eval(p, kind, x) - at) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("parameter validation") {
    MachineParams p;
    CHECK_NOTHROW(p.validate());
    CHECK_FALSE(p.perturbative_warning());
    CHECK(p.validity_ratio() == doctest::Approx(1e-3 / (0.05 * 0.65)));

    p.bath1.omega1 = 0.005;
    CHECK(p.perturbative_warning());

    MachineParams bad;
    bad.bath2.gamma2 = 0.0;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("gamma2"), std::invalid_argument);
    bad = MachineParams{};
    bad.T1 = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
