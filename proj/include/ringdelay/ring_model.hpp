#pragma once

// Physical configuration of a ring threaded by Aharonov-Bohm flux and
// attached to a single semi-infinite lead at the junction J.
//
// Going clockwise from J the ring consists of
//   region II  : barrier of height v1, length lb1       (J  -> P1)
//   region III : zero-potential well of width w          (P1 -> P2)
//   region IV  : barrier of height v3, length lb3       (P2 -> J)
// and region I is the lead.  Units: hbar = 1, 2m = 1, so E = k^2.  With the
// energy scale set to E = 1 potentials are measured in units of E, lengths
// in units of 1/k and delay times in units of 1/E.

#include <complex>
#include <numbers>

namespace ringdelay {

using Complex = std::complex<double>;

inline constexpr double kDefaultCriticalTolerance = 1e-9;

struct RingSpec {
    double energy = 1.0;
    double v1 = 0.0;
    double v3 = 0.0;
    double lb1 = 0.0;
    double lb3 = 0.0;
    double w = 0.0;
    // Phase picked up by a clockwise traversal of each segment (radians).
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;

    double circumference() const noexcept { return lb1 + lb3 + w; }

    RingSpec with_energy(double e) const noexcept {
        RingSpec s = *this;
        s.energy = e;
        return s;
    }
};

/// Single-barrier ring of circumference `length` (lb3 = w = 0) with the whole
/// flux phase carried by segment 1.
RingSpec single_barrier_ring(double energy, double v1, double length, double alpha = 0.0);

/// Two barriers separated by a well; the flux phase is carried by segment 1.
RingSpec two_barrier_ring(double energy, double v1, double v3, double lb1, double lb3, double w,
                          double alpha = 0.0);

/// alpha = 2 pi phi / phi0 for flux phi given in units of the flux quantum.
constexpr double flux_to_phase(double phi) noexcept { return 2.0 * std::numbers::pi * phi; }

/// Wavevector sqrt(E - V) on the physical branch: real positive when the
/// region is classically allowed, positive imaginary (i*kappa) when it is
/// forbidden.
class ComplexWavevector {
public:
    Complex value() const noexcept { return value_; }
    bool evanescent() const noexcept { return value_.imag() > 0.0; }
    /// kappa for evanescent regions, k for propagating ones.
    double magnitude() const noexcept { return evanescent() ? value_.imag() : value_.real(); }

private:
    friend ComplexWavevector wavevector(double, double, double);
    explicit ComplexWavevector(Complex v) noexcept : value_(v) {}
    Complex value_;
};

/// Throws DegenerateWavevector when |energy - potential| <= tolerance and
/// InvalidArgument when energy is not positive.
ComplexWavevector wavevector(double energy, double potential,
                             double critical_tolerance = kDefaultCriticalTolerance);

double total_flux_phase(const RingSpec& spec) noexcept;

/// Checks every RingSpec invariant.  Geometry and energy violations raise
/// InvalidArgument; critical incidence raises DegenerateWavevector.
void validate(const RingSpec& spec, double critical_tolerance = kDefaultCriticalTolerance);

}  // namespace ringdelay
