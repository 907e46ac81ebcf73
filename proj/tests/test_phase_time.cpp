#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ringdelay/analytic.hpp"
#include "ringdelay/errors.hpp"
#include "ringdelay/phase_time.hpp"
#include "ringdelay/scattering.hpp"

using namespace ringdelay;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("principal phase branch") {
    CHECK(principal_phase(1.0) == 0.0);
    CHECK(principal_phase(Complex(0.0, 1.0)) == doctest::Approx(kPi / 2));
    CHECK(principal_phase(-1.0) == kPi);
    CHECK(principal_phase(Complex(-1.0, -0.0)) == kPi);
    CHECK(principal_phase(Complex(-1.0, -1e-10)) < -3.14);
    CHECK_THROWS_AS(principal_phase(0.0), ZeroAmplitude);
    CHECK_THROWS_AS(principal_phase(Complex(1e-301, 0.0)), ZeroAmplitude);
}

TEST_CASE("unwrap examples") {
    const double jump[] = {3.0, 3.1, -3.1};
    const auto a = unwrap(jump);
    CHECK(a[0] == 3.0);
    CHECK(a[1] == 3.1);
    CHECK(a[2] == doctest::Approx(-3.1 + 2 * kPi).epsilon(1e-15));

    const double smooth[] = {0.0, 0.1, 0.2};
    const auto b = unwrap(smooth);
    CHECK(b == std::vector<double>{0.0, 0.1, 0.2});

    const double cut[] = {kPi - 0.01, -kPi + 0.01};
    const auto c = unwrap(cut);
    CHECK(c[1] == doctest::Approx(kPi + 0.01).epsilon(1e-15));
}

TEST_CASE("property: unwrap recovers a sampled continuous phase") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> slope(-2.5, 2.5), start(-20.0, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> truth(100), wrapped(100);
        double x = start(rng);
        for (std::size_t i = 0; i < truth.size(); ++i) {
            truth[i] = x;
            wrapped[i] = std::remainder(x, 2 * kPi);
            x += slope(rng);
        }
        const auto u = unwrap(wrapped);
        const double offset = truth[0] - u[0];
        for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] + offset == doctest::Approx(truth[i]).epsilon(1e-12));
        for (std::size_t i = 1; i < u.size(); ++i) {
            CHECK(u[i] - u[i - 1] > -kPi);
            CHECK(u[i] - u[i - 1] <= kPi);
        }
    }
}

TEST_CASE("Hartman saturation value from the solver") {
    const PhaseTimeResult r = phase_time(single_barrier_ring(1.0, 5.0, 30.0), 1e-5, reflection_amplitude);
    CHECK(std::abs(r.tau - 5.0 / 17.0) < 1e-5);
    CHECK(r.step == 1e-5);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.error_estimate < 1e-8);
}

TEST_CASE("well width does not change the saturated delay off resonance") {
    // kappa lb1 = 20: saturated in lb1.  At lb1 = 3 the delay has not
    // saturated yet and the spread across w is several percent.
    std::vector<double> taus;
    for (double w : {0.0, 1.0, 5.0, 10.0}) {
        taus.push_back(phase_time(two_barrier_ring(1.0, 2.0, 2.0, 20.0, 5.0, w)).tau);
    }
    for (double a : taus) {
        for (double b : taus) CHECK(std::abs(a - b) < 0.01 * std::min(a, b));
    }
}

TEST_CASE("flux periodicity of the delay") {
    const double t0 = phase_time(single_barrier_ring(1.0, 5.0, 9.0, 0.0)).tau;
    const double t1 = phase_time(single_barrier_ring(1.0, 5.0, 9.0, flux_to_phase(1.0))).tau;
    CHECK(std::abs(t0 - t1) < 1e-8);
    for (double alpha : {0.5, 1.7, 3.0}) {
        const double plus = phase_time(single_barrier_ring(1.0, 5.0, 3.0, alpha)).tau;
        const double minus = phase_time(single_barrier_ring(1.0, 5.0, 3.0, -alpha)).tau;
        const double wrapped = phase_time(single_barrier_ring(1.0, 5.0, 3.0, alpha + 2 * kPi)).tau;
        CHECK(std::abs(plus - minus) < 1e-8);
        CHECK(std::abs(plus - wrapped) < 1e-8);
    }
}

TEST_CASE("numerical derivative of the closed form matches the hand derivative") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> excess(0.1, 8.0), len(0.2, 25.0), phase(0.0, 2 * kPi);
    for (int i = 0; i < 300; ++i) {
        const RingSpec s = single_barrier_ring(1.0, 1.0 + excess(rng), len(rng), phase(rng));
        const double numeric = phase_time(s, default_step(1.0), analytic_reflection).tau;
        const double exact = tau_closed_form(as_single_barrier(s));
        CHECK(std::abs(numeric - exact) <= 1e-5 * std::abs(exact));
    }
}

TEST_CASE("central differences converge at second order") {
    const RingSpec s = single_barrier_ring(1.0, 3.0, 1.5, 0.7);
    const double exact = tau_closed_form(as_single_barrier(s));
    double previous = std::abs(central_difference(s, 0.04, analytic_reflection) - exact);
    for (double h : {0.02, 0.01, 0.005}) {
        const double err = std::abs(central_difference(s, h, analytic_reflection) - exact);
        CHECK(previous / err == doctest::Approx(4.0).epsilon(0.05));
        previous = err;
    }
}

TEST_CASE("halving the step stays within the error estimate") {
    for (double length : {0.7, 2.0, 6.0, 20.0}) {
        const RingSpec s = two_barrier_ring(1.0, 2.0, 3.0, length, 1.5, 2.0, 0.4);
        const PhaseTimeResult a = phase_time(s, 1e-4, reflection_amplitude);
        const PhaseTimeResult b = phase_time(s, 5e-5, reflection_amplitude);
        CHECK(std::abs(a.tau - b.tau) < 4.0 * a.error_estimate);
    }
}

TEST_CASE("delay converges monotonically to the saturated value") {
    const double ts = tau_saturated(1.0, 5.0);
    double previous = INFINITY;
    // kappa L from 10 to 20: the gap stays far above differentiation noise.
    for (int i = 0; i <= 50; ++i) {
        const double length = 5.0 + 0.1 * i;
        const PhaseTimeResult r = phase_time(single_barrier_ring(1.0, 5.0, length));
        const double gap = std::abs(r.tau - ts);
        CHECK(gap < previous);
        previous = gap;
    }
}

TEST_CASE("stencil errors") {
    const RingSpec s = single_barrier_ring(1.0, 5.0, 3.0);
    CHECK_THROWS_AS(phase_time(s, 0.0, reflection_amplitude), InvalidArgument);
    CHECK_THROWS_AS(phase_time(s, -1e-5, reflection_amplitude), InvalidArgument);
    // Centre is valid but E + h sits on the barrier top.
    const RingSpec edge = single_barrier_ring(1.0, 1.0 + 1e-5, 3.0);
    CHECK_THROWS_AS(phase_time(edge, 1e-5, reflection_amplitude), DegenerateWavevector);
    CHECK_THROWS_AS(phase_time(edge, 1e-5, analytic_reflection), DegenerateWavevector);
}

TEST_CASE("steep phase halves the step before giving up") {
    const ReflectionProvider steep = [](const RingSpec& s) { return std::polar(1.0, 1e5 * s.energy); };
    const PhaseTimeResult r = phase_time(single_barrier_ring(1.0, 0.0, 1.0), 1e-5, steep);
    CHECK(r.step == 5e-6);
    CHECK(r.tau == doctest::Approx(1e5).epsilon(1e-6));

    const ReflectionProvider jump = [](const RingSpec& s) {
        return std::polar(1.0, s.energy >= 1.0 ? 0.9 * kPi : 0.0);
    };
    RingSpec free_ring = single_barrier_ring(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(phase_time(free_ring, 1e-5, jump), StepTooLarge);
    CHECK_THROWS_AS(central_difference(free_ring, 1e-5, jump), StepTooLarge);
}
