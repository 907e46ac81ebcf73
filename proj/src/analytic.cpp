#include "ringdelay/analytic.hpp"

#include <cmath>
#include <string>

#include "ringdelay/errors.hpp"
#include "ringdelay/format.hpp"

namespace ringdelay {
namespace {

struct Coupling {
    double k;
    double kappa;
    double g;        // G
    double dg_dkap;  // dG / dkappa
};

// G and its kappa derivative written in t = exp(-kappa L) so that neither
// overflows for opaque barriers:
//   (cos a - cosh u)/sinh u    = -[(1-t)^2 + 2t(1 - cos a)] / (1 - t^2)
//   (1 - cos a cosh u)/sinh^2 u = [4t^2 - 2t cos a (1 + t^2)] / (1 - t^2)^2
Coupling coupling(const SingleBarrierSpec& s) {
    const double k = std::sqrt(s.energy);
    const double kappa = std::sqrt(s.v1 - s.energy);
    const double u = kappa * s.length;
    const double t = std::exp(-u);
    const double one_minus_t = -std::expm1(-u);
    const double one_minus_t2 = -std::expm1(-2.0 * u);
    const double half_sin = std::sin(0.5 * s.alpha);
    const double one_minus_cos = 2.0 * half_sin * half_sin;
    const double cos_a = std::cos(s.alpha);

    const double f = -(one_minus_t * one_minus_t + 2.0 * t * one_minus_cos) / one_minus_t2;
    const double df = (4.0 * t * t - 2.0 * t * cos_a * (1.0 + t * t)) / (one_minus_t2 * one_minus_t2);
    return {k, kappa, 2.0 * kappa * f, 2.0 * f + 2.0 * u * df};
}

}  // namespace

void validate(const SingleBarrierSpec& spec) {
    if (!(spec.energy > 0.0) || !std::isfinite(spec.energy)) {
        throw InvalidArgument("energy must be positive and finite");
    }
    if (!(spec.v1 > spec.energy) || !std::isfinite(spec.v1)) {
        throw InvalidRegime("single-barrier closed form needs v1 > E (tunnelling), got E=" +
                            format_double(spec.energy) + ", v1=" + format_double(spec.v1));
    }
    if (!(spec.length > 0.0) || !std::isfinite(spec.length)) {
        throw InvalidArgument("single-barrier ring length must be positive");
    }
    if (!std::isfinite(spec.alpha)) {
        throw InvalidArgument("flux phase must be finite");
    }
}

SingleBarrierSpec as_single_barrier(const RingSpec& spec) {
    if (spec.lb3 != 0.0 || spec.w != 0.0) {
        throw InvalidRegime("closed form covers only the single-barrier ring (lb3 = w = 0)");
    }
    return {spec.energy, spec.v1, spec.lb1, total_flux_phase(spec)};
}

Complex reflection_closed_form(const SingleBarrierSpec& spec) {
    validate(spec);
    const Coupling c = coupling(spec);
    const Complex ik{0.0, c.k};
    return (ik - c.g) / (ik + c.g);
}

Complex reflection_leading_order(const SingleBarrierSpec& spec, ExponentFactor exponent) {
    validate(spec);
    const double k = std::sqrt(spec.energy);
    const double kappa = std::sqrt(spec.v1 - spec.energy);
    const double rate = exponent == ExponentFactor::barrier_decay ? kappa : k;
    // Numerator and denominator divided through by X.
    const double inv_x = std::exp(-rate * spec.length);
    const double real_part = kappa * (2.0 * std::cos(spec.alpha) * inv_x - 1.0);
    const Complex half_k{0.0, 0.5 * k};
    return (-real_part + half_k) / (real_part + half_k);
}

double tau_saturated(double energy, double v1) {
    if (!(energy > 0.0) || !(v1 > energy)) {
        throw InvalidRegime("saturated delay needs v1 > E > 0");
    }
    const double k = std::sqrt(energy);
    const double kappa = std::sqrt(v1 - energy);
    return (1.0 / (k * kappa) + k / (kappa * kappa * kappa)) / (2.0 + k * k / (2.0 * kappa * kappa));
}

double tau_closed_form(const SingleBarrierSpec& spec) {
    validate(spec);
    const Coupling c = coupling(spec);
    // Arg R = pi - 2 atan2(k, G); dk/dE = 1/(2k), dkappa/dE = -1/(2 kappa).
    const double dk = 0.5 / c.k;
    const double dg = -0.5 / c.kappa * c.dg_dkap;
    return -2.0 * (c.g * dk - c.k * dg) / (c.g * c.g + c.k * c.k);
}

Complex analytic_reflection(const RingSpec& spec) {
    return reflection_closed_form(as_single_barrier(spec));
}

}  // namespace ringdelay
