#pragma once

// Closed-form results for a ring whose whole circumference L is a single
// rectangular barrier of height v1 > E, threaded by total flux phase alpha.
//
// Eliminating the barrier amplitudes leaves a single junction condition
//
//     ik (1 - R) = G (1 + R),   G = 2 kappa (cos alpha - cosh kappa L) / sinh kappa L,
//
// so R = (ik - G) / (ik + G), which has unit modulus because G is real.
// Writing X = exp(kappa L) this is
//
//     R = [-kappa (2 cos alpha - X - 1/X) + i (k/2)(X - 1/X)]
//       / [ kappa (2 cos alpha - X - 1/X) + i (k/2)(X - 1/X)],
//
// and dropping the 1/X terms gives the large-L form
// R ~ [-kappa (2 cos alpha - X) + i (k/2) X] / [kappa (2 cos alpha - X) + i (k/2) X].

#include "ringdelay/ring_model.hpp"

namespace ringdelay {

struct SingleBarrierSpec {
    double energy = 1.0;
    double v1 = 0.0;
    double length = 0.0;
    double alpha = 0.0;
};

/// Exponential factor X appearing in the large-L reflection form.
enum class ExponentFactor {
    barrier_decay,     // X = exp(kappa1 L)
    free_propagation,  // X = exp(k L)
};

/// The convention reproduced by the boundary-value solver; the
/// free-propagation reading disagrees with it at every finite L.
inline constexpr ExponentFactor kResolvedExponent = ExponentFactor::barrier_decay;

/// Throws InvalidRegime unless v1 > energy > 0, and InvalidArgument for a
/// non-positive length.
void validate(const SingleBarrierSpec& spec);

/// Converts a RingSpec with lb3 = w = 0 (any v3) to the single-barrier form.
SingleBarrierSpec as_single_barrier(const RingSpec& spec);

/// Exact reflection amplitude R = (ik - G)/(ik + G).
Complex reflection_closed_form(const SingleBarrierSpec& spec);

/// Large-L form keeping only the dominant exponential X.
Complex reflection_leading_order(const SingleBarrierSpec& spec,
                                 ExponentFactor exponent = kResolvedExponent);

/// Saturated delay [1/(k kappa) + k/kappa^3] / [2 + k^2/(2 kappa^2)].
double tau_saturated(double energy, double v1);

/// d Arg R / dE of reflection_closed_form, differentiated by hand.
double tau_closed_form(const SingleBarrierSpec& spec);

/// Adapter usable as a reflection provider for phase_time().
Complex analytic_reflection(const RingSpec& spec);

}  // namespace ringdelay
