#include <cmath>
#include <random>

#include "doctest.h"
#include "qtur/observables.hpp"

using namespace qtur;

namespace {

MachineParams fig2(double Omega = 0.35, double omega1 = 0.65) {
    MachineParams p;
    p.Omega = Omega;
    p.bath1.omega1 = omega1;
    return p;
}

Observables with_currents(double P, double J1) {
    Observables o;
    o.P = P;
    o.J1 = J1;
    o.J2 = -P - J1;
    return o;
}

}  // namespace

TEST_CASE("evaluate_point at the reference engine point") {
    const MachineParams p = fig2();
    const Observables obs = evaluate_point(p, QuadratureConfig{});
    CHECK(obs.quad_converged);
    CHECK(obs.P + obs.J1 + obs.J2 == 0.0);
    CHECK(obs.Sdot == doctest::Approx(-obs.J1 / p.T1 - obs.J2 / p.T2).epsilon(1e-15));
    CHECK(obs.P < 0.0);
    CHECK(obs.J1 < 0.0);
    CHECK(obs.Sdot > 0.0);
    CHECK(obs.D_J1 > 0.0);
    CHECK(obs.D_P > 0.0);

    const PerformanceMetrics perf = performance(obs, p);
    CHECK(perf.mode.kind == ModeKind::Engine);
    REQUIRE(perf.Q_P);
    CHECK(*perf.Q_P >= 2.0);
    CHECK(*perf.Q_P <= 2.2);
    REQUIRE(perf.eta_norm);
    CHECK(*perf.eta_norm == doctest::Approx(0.70).epsilon(0.05 / 0.70));
    CHECK_FALSE(perf.cop);
    CHECK_FALSE(perf.cop_norm);
}

TEST_CASE("classify_mode sign patterns") {
    CHECK(classify_mode(with_currents(-1e-3, -2e-3)).kind == ModeKind::Engine);
    CHECK(classify_mode(with_currents(1e-3, 2e-3)).kind == ModeKind::Refrigerator);
    const auto other = classify_mode(with_currents(1e-3, -2e-3));
    CHECK(other.kind == ModeKind::Other);
    CHECK(other.sign_P == 1);
    CHECK(other.sign_J1 == -1);
    CHECK(other.sign_J2 == 1);
    // below threshold counts as zero
    CHECK(classify_mode(with_currents(-1e-15, -2e-3)).kind == ModeKind::Other);
    // hot bath 1: judged on J2
    CHECK(classify_mode(with_currents(-1e-3, 3e-3), kModeThreshold, HotBath::One).kind == ModeKind::Engine);
    CHECK(classify_mode(with_currents(1e-3, -3e-3), kModeThreshold, HotBath::One).kind == ModeKind::Refrigerator);
}

TEST_CASE("Carnot limits and mode-gated metrics") {
    MachineParams p = fig2();
    Observables engine = with_currents(-1e-4, -2e-4);
    engine.Sdot = -engine.J1 / p.T1 - engine.J2 / p.T2;
    engine.D_P = engine.D_J1 = 1e-3;
    const auto perf = performance(engine, p);
    CHECK(*perf.eta_C == doctest::Approx(0.5));
    CHECK(*perf.cop_C == doctest::Approx(1.0));
    CHECK(*perf.eta == doctest::Approx(1e-4 / 3e-4));
    CHECK(*perf.eta_norm == doctest::Approx(2.0 / 3.0));
    CHECK_FALSE(perf.cop);

    Observables fridge = with_currents(2e-4, 1e-4);
    const auto fperf = performance(fridge, p);
    CHECK(*fperf.cop == doctest::Approx(0.5));
    CHECK(*fperf.cop_norm == doctest::Approx(0.5));
    CHECK_FALSE(fperf.eta);

    Observables still = with_currents(0.0, 1e-4);
    CHECK_FALSE(performance(still, p).Q_P);
    CHECK(performance(still, p).Q_J1);

    MachineParams equal = p;
    equal.T1 = equal.T2 = 0.6;
    const auto eperf = performance(engine, equal);
    CHECK_FALSE(eperf.eta_C);
    CHECK_FALSE(eperf.cop_C);
    CHECK(eperf.eta);
    CHECK_FALSE(eperf.eta_norm);
    CHECK(eperf.Q_P);

    MachineParams swapped = p;
    swapped.T1 = 0.8;
    swapped.T2 = 0.4;
    Observables mirrored = with_currents(-1e-4, 3e-4);  // J2 = -2e-4 < 0
    const auto sperf = performance(mirrored, swapped);
    CHECK(sperf.mode.kind == ModeKind::Engine);
    CHECK(*sperf.eta_C == doctest::Approx(0.5));
    CHECK(*sperf.cop_C == doctest::Approx(1.0));
    CHECK(*sperf.eta == doctest::Approx(1e-4 / 3e-4));
}

TEST_CASE("mirrored temperatures on the mirrored resonance run as an engine") {
    MachineParams p = fig2(0.35, 1.35);
    p.T1 = 0.8;
    p.T2 = 0.4;
    const Observables obs = evaluate_point(p, QuadratureConfig{});
    const auto perf = performance(obs, p);
    CHECK(perf.mode.kind == ModeKind::Engine);
    CHECK(obs.Sdot > 0.0);
    REQUIRE(perf.eta_norm);
    CHECK(*perf.eta_norm > 0.0);
    CHECK(*perf.eta_norm <= 1.0 + 1e-9);
}

TEST_CASE("equilibrium: equal temperatures and a vanishing drive") {
    MachineParams p = fig2(1e-6, 0.65);
    p.T1 = p.T2 = 0.4;
    const Observables obs = evaluate_point(p, QuadratureConfig{});
    CHECK(std::abs(obs.J1) < 1e-10);
    CHECK(std::abs(obs.P) < 1e-10);
}

TEST_CASE("second law, positive fluctuations and TUR on random points") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> Omega(0.05, 0.95), omega1(0.05, 1.95);
    const QuadratureConfig cfg;
    for (int i = 0; i < 60; ++i) {
        const MachineParams p = fig2(Omega(rng), omega1(rng));
        const Observables obs = evaluate_point(p, cfg);
        CHECK(obs.Sdot >= -1e-12);
        CHECK(obs.D_J1 >= -1e-12);
        CHECK(obs.D_P >= -1e-12);
        const auto perf = performance(obs, p);
        if (perf.Q_P) CHECK(*perf.Q_P >= 2.0 - 1e-9);
        if (perf.Q_J1) CHECK(*perf.Q_J1 >= 2.0 - 1e-9);
        if (perf.eta_norm) CHECK(*perf.eta_norm <= 1.0 + 1e-9);
        if (perf.cop_norm) CHECK(*perf.cop_norm <= 1.0 + 1e-9);
    }
}

TEST_CASE("invalid parameters are rejected before integration") {
    MachineParams p = fig2();
    p.m = 0.0;
    CHECK_THROWS_AS((void)evaluate_point(p, QuadratureConfig{}), std::invalid_argument);
}
