#include "ringdelay/ring_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ringdelay/errors.hpp"
#include "ringdelay/format.hpp"

namespace ringdelay {

RingSpec single_barrier_ring(double energy, double v1, double length, double alpha) {
    RingSpec s;
    s.energy = energy;
    s.v1 = v1;
    s.lb1 = length;
    s.alpha1 = alpha;
    return s;
}

RingSpec two_barrier_ring(double energy, double v1, double v3, double lb1, double lb3, double w,
                          double alpha) {
    RingSpec s;
    s.energy = energy;
    s.v1 = v1;
    s.v3 = v3;
    s.lb1 = lb1;
    s.lb3 = lb3;
    s.w = w;
    s.alpha1 = alpha;
    return s;
}

ComplexWavevector wavevector(double energy, double potential, double critical_tolerance) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InvalidArgument("energy must be positive and finite, got " + format_double(energy));
    }
    if (!std::isfinite(potential)) {
        throw InvalidArgument("potential must be finite");
    }
    const double gap = energy - potential;
    if (std::abs(gap) <= critical_tolerance) {
        throw DegenerateWavevector("critical incidence: |E - V| = " + format_double(std::abs(gap)) +
                                   " <= " + format_double(critical_tolerance) + " (E=" +
                                   format_double(energy) + ", V=" + format_double(potential) + ")");
    }
    if (gap > 0.0) {
        return ComplexWavevector(Complex(std::sqrt(gap), 0.0));
    }
    return ComplexWavevector(Complex(0.0, std::sqrt(-gap)));
}

double total_flux_phase(const RingSpec& spec) noexcept {
    // Summed in sorted order so the result is independent of which segment
    // carries which share.
    std::array<double, 3> a = {spec.alpha1, spec.alpha2, spec.alpha3};
    std::sort(a.begin(), a.end());
    return (a[0] + a[1]) + a[2];
}

void validate(const RingSpec& spec, double critical_tolerance) {
    auto finite_nonneg = [](double x, const char* name) {
        if (!std::isfinite(x) || x < 0.0) {
            throw InvalidArgument(std::string(name) + " must be finite and >= 0, got " +
                                  format_double(x));
        }
    };
    finite_nonneg(spec.v1, "v1");
    finite_nonneg(spec.v3, "v3");
    finite_nonneg(spec.lb1, "lb1");
    finite_nonneg(spec.lb3, "lb3");
    finite_nonneg(spec.w, "w");
    if (!(spec.circumference() > 0.0)) {
        throw InvalidArgument("ring circumference lb1 + lb3 + w must be positive");
    }
    if (!std::isfinite(spec.alpha1) || !std::isfinite(spec.alpha2) || !std::isfinite(spec.alpha3)) {
        throw InvalidArgument("flux phases must be finite");
    }
    (void)wavevector(spec.energy, spec.v1, critical_tolerance);
    (void)wavevector(spec.energy, spec.v3, critical_tolerance);
}

}  // namespace ringdelay
