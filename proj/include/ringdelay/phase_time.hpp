#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ringdelay/ring_model.hpp"

namespace ringdelay {

/// Any function returning the reflection amplitude for a configuration.
using ReflectionProvider = std::function<Complex(const RingSpec&)>;

inline constexpr double kDefaultRelativeStep = 1e-5;
inline constexpr int kMaxStepHalvings = 8;

/// Default energy step: kDefaultRelativeStep * E.
double default_step(double energy);

struct PhaseTimeResult {
    double tau = 0.0;             // units of 1/E (hbar = 1)
    double step = 0.0;            // energy step h actually used
    double error_estimate = 0.0;  // Richardson gap plus phase round-off bound
    Complex reflection{};         // R at the central energy
};

/// Arg z in (-pi, pi].  Throws ZeroAmplitude for |z| < 1e-300.
double principal_phase(Complex z);

/// Removes 2 pi jumps so that successive differences lie in (-pi, pi].
std::vector<double> unwrap(std::span<const double> phases);

/// Plain central difference (phi(E+h) - phi(E-h)) / 2h.  Throws
/// StepTooLarge when the unwrapped phase moves by more than pi/2 across the
/// stencil.
double central_difference(const RingSpec& spec, double step, const ReflectionProvider& reflection,
                          double critical_tolerance = kDefaultCriticalTolerance);

/// Wigner delay tau = d Arg R / dE, Richardson-extrapolated from central
/// differences at h and h/2.  An undersampled stencil halves h up to
/// kMaxStepHalvings times before StepTooLarge propagates.
PhaseTimeResult phase_time(const RingSpec& spec, double step, const ReflectionProvider& reflection,
                           double critical_tolerance = kDefaultCriticalTolerance);

/// phase_time with the boundary-value solver as provider and the default step.
PhaseTimeResult phase_time(const RingSpec& spec);

}  // namespace ringdelay
