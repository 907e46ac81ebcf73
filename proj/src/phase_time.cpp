#include "ringdelay/phase_time.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ringdelay/errors.hpp"
#include "ringdelay/format.hpp"
#include "ringdelay/scattering.hpp"

namespace ringdelay {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Stencil {
    double tau;
    double max_abs_phase;
};

Stencil stencil(const RingSpec& spec, double h, const ReflectionProvider& reflection, double tol,
                Complex center) {
    const RingSpec lo = spec.with_energy(spec.energy - h);
    const RingSpec hi = spec.with_energy(spec.energy + h);
    validate(lo, tol);
    validate(hi, tol);
    const double raw[3] = {principal_phase(reflection(lo)), principal_phase(center),
                           principal_phase(reflection(hi))};
    const auto phases = unwrap(raw);
    const double delta = phases[2] - phases[0];
    if (std::abs(delta) > 0.5 * kPi) {
        throw StepTooLarge("phase changes by " + format_double(delta) + " rad across energy stencil of half-width " +
                           format_double(h));
    }
    const double max_abs =
        std::max({std::abs(phases[0]), std::abs(phases[1]), std::abs(phases[2])});
    return {delta / (2.0 * h), max_abs};
}

void check_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidArgument("energy step must be positive, got " + format_double(step));
    }
}

}  // namespace

double default_step(double energy) {
    return kDefaultRelativeStep * energy;
}

double principal_phase(Complex z) {
    if (!(std::abs(z) >= 1e-300)) {
        throw ZeroAmplitude("phase of a vanishing amplitude is undefined");
    }
    const double phi = std::arg(z);
    // std::arg returns -pi for (-x, -0.0); fold onto the closed end.
    return phi == -kPi ? kPi : phi;
}

std::vector<double> unwrap(std::span<const double> phases) {
    std::vector<double> out(phases.begin(), phases.end());
    double offset = 0.0;
    for (std::size_t i = 1; i < phases.size(); ++i) {
        double d = phases[i] - phases[i - 1];
        // Bring the raw jump into (-pi, pi].
        const double turns = std::ceil((d - kPi) / (2.0 * kPi));
        offset -= turns * 2.0 * kPi;
        out[i] = phases[i] + offset;
    }
    return out;
}

double central_difference(const RingSpec& spec, double step, const ReflectionProvider& reflection,
                          double critical_tolerance) {
    check_step(step);
    validate(spec, critical_tolerance);
    return stencil(spec, step, reflection, critical_tolerance, reflection(spec)).tau;
}

PhaseTimeResult phase_time(const RingSpec& spec, double step, const ReflectionProvider& reflection,
                           double critical_tolerance) {
    check_step(step);
    validate(spec, critical_tolerance);
    const Complex center = reflection(spec);

    double h = step;
    for (int halvings = 0;; ++halvings) {
        try {
            const Stencil coarse = stencil(spec, h, reflection, critical_tolerance, center);
            const Stencil fine = stencil(spec, 0.5 * h, reflection, critical_tolerance, center);
            const double tau = (4.0 * fine.tau - coarse.tau) / 3.0;
            // Phase round-off delta enters the extrapolant with weight 3/h.
            const double phase_noise = 4.0 * kEps * (1.0 + std::max(coarse.max_abs_phase, fine.max_abs_phase));
            const double error = std::abs(fine.tau - coarse.tau) / 3.0 + 3.0 * phase_noise / h;
            return {tau, h, error, center};
        } catch (const StepTooLarge&) {
            if (halvings == kMaxStepHalvings) throw;
            h *= 0.5;
        }
    }
}

PhaseTimeResult phase_time(const RingSpec& spec) {
    return phase_time(spec, default_step(spec.energy), reflection_amplitude);
}

}  // namespace ringdelay
