#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ringdelay/errors.hpp"
#include "ringdelay/ring_model.hpp"

using namespace ringdelay;

namespace {

double ulp_distance(double a, double b) {
    const double spacing = std::nextafter(std::abs(b), INFINITY) - std::abs(b);
    return std::abs(a - b) / spacing;
}

}  // namespace

TEST_CASE("wavevector examples") {
    const auto free = wavevector(1.0, 0.0);
    CHECK(free.value() == Complex(1.0, 0.0));
    CHECK_FALSE(free.evanescent());

    const auto opaque = wavevector(1.0, 5.0);
    CHECK(opaque.value() == Complex(0.0, 2.0));
    CHECK(opaque.evanescent());
    CHECK(opaque.magnitude() == 2.0);

    CHECK(wavevector(1.0, 1.25).value() == Complex(0.0, 0.5));
}

TEST_CASE("critical incidence is rejected within the tolerance") {
    CHECK_THROWS_AS(wavevector(1.0, 1.0), DegenerateWavevector);
    CHECK_THROWS_AS(wavevector(1.0, 1.0 + 5e-10), DegenerateWavevector);
    CHECK_NOTHROW(wavevector(1.0, 1.0 + 1e-8));
    CHECK_THROWS_AS(wavevector(1.0, 1.001, 1e-2), DegenerateWavevector);
    CHECK_NOTHROW(wavevector(1.0, 1.001, 1e-4));
}

TEST_CASE("non-positive energy is an invalid argument") {
    CHECK_THROWS_AS(wavevector(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(wavevector(-2.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(wavevector(NAN, 1.0), InvalidArgument);
}

TEST_CASE("wavevector squared reconstructs E - V to 4 ulps") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> energy(0.01, 10.0), potential(0.0, 20.0);
    for (int i = 0; i < 10000; ++i) {
        const double e = energy(rng), v = potential(rng);
        if (std::abs(e - v) <= 1e-6) continue;
        const auto q = wavevector(e, v);
        const Complex sq = q.value() * q.value();
        CHECK(ulp_distance(sq.real(), e - v) <= 4.0);
        CHECK(sq.imag() == 0.0);
        // Exactly one branch component is nonzero.
        CHECK(((q.value().real() > 0.0) != (q.value().imag() > 0.0)));
    }
}

TEST_CASE("wavevector shrinks continuously towards V = E from either side") {
    for (double gap : {1e-2, 1e-4, 1e-6, 1e-8}) {
        CHECK(wavevector(1.0, 1.0 - gap).magnitude() == doctest::Approx(std::sqrt(gap)).epsilon(1e-12));
        CHECK(wavevector(1.0, 1.0 + gap).magnitude() == doctest::Approx(std::sqrt(gap)).epsilon(1e-12));
    }
}

TEST_CASE("total flux phase") {
    RingSpec s;
    CHECK(total_flux_phase(s) == 0.0);
    s.alpha1 = std::numbers::pi;
    CHECK(total_flux_phase(s) == std::numbers::pi);
    s.alpha1 = 1.0;
    s.alpha2 = 2.0;
    s.alpha3 = 3.0;
    CHECK(total_flux_phase(s) == 6.0);
}

TEST_CASE("total flux phase is invariant under permutation of the segments") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 3> a = {phase(rng), phase(rng), phase(rng)};
        std::sort(a.begin(), a.end());
        RingSpec ref;
        ref.alpha1 = a[0];
        ref.alpha2 = a[1];
        ref.alpha3 = a[2];
        const double expected = total_flux_phase(ref);
        do {
            RingSpec s;
            s.alpha1 = a[0];
            s.alpha2 = a[1];
            s.alpha3 = a[2];
            CHECK(total_flux_phase(s) == expected);
        } while (std::next_permutation(a.begin(), a.end()));
    }
}

TEST_CASE("flux quanta convert to phase 2 pi phi") {
    CHECK(flux_to_phase(1.0) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(flux_to_phase(0.25) == doctest::Approx(0.5 * std::numbers::pi));
}

TEST_CASE("validate rejects broken geometry and critical barriers") {
    CHECK_NOTHROW(validate(single_barrier_ring(1.0, 5.0, 10.0)));
    CHECK_THROWS_AS(validate(single_barrier_ring(1.0, 5.0, 0.0)), InvalidArgument);
    CHECK_THROWS_AS(validate(single_barrier_ring(1.0, -1.0, 3.0)), InvalidArgument);
    CHECK_THROWS_AS(validate(two_barrier_ring(1.0, 2.0, 2.0, 3.0, -5.0, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(validate(single_barrier_ring(0.0, 5.0, 3.0)), InvalidArgument);
    CHECK_THROWS_AS(validate(two_barrier_ring(1.0, 2.0, 1.0, 3.0, 5.0, 1.0)), DegenerateWavevector);

    const RingSpec s = two_barrier_ring(1.0, 2.0, 3.0, 3.0, 5.0, 1.0);
    CHECK(s.circumference() == 9.0);
    CHECK(s.with_energy(2.0).energy == 2.0);
    CHECK(s.with_energy(2.0).lb3 == 5.0);
}
