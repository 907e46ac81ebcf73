#pragma once

// Test-only reference computations, deliberately independent of the library's
// balanced-basis linear system.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "ringdelay/ring_model.hpp"

namespace oracle {

using ringdelay::Complex;
using Mat2 = std::array<Complex, 4>;  // row major

inline Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// (psi, psi') at x = 0 -> (psi, psi') at x = l for psi'' = -q^2 psi.
inline Mat2 segment_transfer(Complex q, double l) {
    const Complex c = std::cos(q * l), s = std::sin(q * l);
    return {c, s / q, -q * s, c};
}

inline Complex wave(double e, double v) {
    return e > v ? Complex(std::sqrt(e - v), 0.0) : Complex(0.0, std::sqrt(v - e));
}

/// R from propagating (psi, psi') once around the loop with 2x2 transfer
/// matrices.  With c = 1 + R and d = psi'(0+) on segment 1, the loop returns
/// e^{i alpha} M (c, d); closing the loop and imposing the junction current
/// gives R = (ik - Y)/(ik + Y).  Valid away from sin(q l) = 0 loop
/// resonances and for lengths where cosh does not overflow.
inline Complex transfer_matrix_reflection(const ringdelay::RingSpec& s) {
    const double k = std::sqrt(s.energy);
    const Mat2 m = mul(segment_transfer(wave(s.energy, s.v3), s.lb3),
                       mul(segment_transfer(Complex(k, 0.0), s.w), segment_transfer(wave(s.energy, s.v1), s.lb1)));
    const double alpha = s.alpha1 + s.alpha2 + s.alpha3;
    const Complex p = std::polar(1.0, alpha);
    const Complex d = (std::conj(p) - m[0]) / m[1];
    const Complex y = d - p * (m[2] + m[3] * d);
    const Complex ik(0.0, k);
    return (ik - y) / (ik + y);
}

/// Random valid spec on the grid E in (0.1, 10), V in [0, 10] with
/// |E - V| >= 1e-6, lengths in [0, 30], alpha in [0, 2 pi).
template <class Rng>
ringdelay::RingSpec random_spec(Rng& rng, double max_length = 30.0) {
    std::uniform_real_distribution<double> energy(0.1, 10.0), pot(0.0, 10.0), len(0.0, max_length),
        phase(0.0, 2.0 * M_PI), unit(0.0, 1.0);
    ringdelay::RingSpec s;
    s.energy = energy(rng);
    do s.v1 = pot(rng); while (std::abs(s.v1 - s.energy) < 1e-6);
    do s.v3 = pot(rng); while (std::abs(s.v3 - s.energy) < 1e-6);
    do {
        s.lb1 = len(rng);
        s.lb3 = unit(rng) < 0.2 ? 0.0 : len(rng);
        s.w = unit(rng) < 0.2 ? 0.0 : len(rng);
    } while (s.circumference() <= 0.0);
    const double alpha = phase(rng);
    const double cut1 = unit(rng), cut2 = unit(rng);
    s.alpha1 = alpha * std::min(cut1, cut2);
    s.alpha2 = alpha * (std::max(cut1, cut2) - std::min(cut1, cut2));
    s.alpha3 = alpha - s.alpha1 - s.alpha2;
    return s;
}

}  // namespace oracle
