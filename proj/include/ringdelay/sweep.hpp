#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringdelay/phase_time.hpp"
#include "ringdelay/ring_model.hpp"

namespace ringdelay {

struct SweepRow {
    double parameter = 0.0;
    double tau = 0.0;
    double reflectance = 0.0;  // |R|^2
    double phase = 0.0;        // Arg R, unwrapped along the sweep
    double tau_error = 0.0;
};

struct SweepSeries {
    std::string parameter_name;
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    /// Energy step for differentiation; defaults to default_step(E).
    std::optional<double> step;
    /// Worker threads for row evaluation (0 = hardware concurrency).  Rows are
    /// independent, so the result does not depend on this value.
    unsigned threads = 1;
    ReflectionProvider reflection;  // empty: boundary-value solver
};

/// `steps` equally spaced values from `from` to `to` inclusive.  Requires
/// steps >= 2 and from < to.
std::vector<double> sweep_grid(double from, double to, int steps);

/// Single-barrier ring (lb3 = w = 0): tau against circumference L = lb1.
SweepSeries scan_length(const RingSpec& base, double l_from, double l_to, int steps,
                        const SweepOptions& options = {});

struct FluxScan {
    SweepSeries series;  // parameter: phi in units of the flux quantum
    double visibility = 0.0;
    double mean_tau = 0.0;
};

/// (max - min) / (max + min).
double visibility(const SweepSeries& series);

/// tau against flux; the total phase 2 pi phi is placed on segment 1.
FluxScan scan_flux(const RingSpec& base, double phi_from, double phi_to, int steps,
                   const SweepOptions& options = {});

struct WellScan {
    SweepSeries series;  // parameter: lb1
    double saturated_tau = 0.0;  // tau at the longest lb1
};

/// Two-barrier ring (lb3 > 0): tau against lb1 with lb3 and w fixed.
WellScan scan_well(const RingSpec& base, double lb1_from, double lb1_to, int steps,
                   const SweepOptions& options = {});

struct ResonancePeak {
    double location = 0.0;  // well width at the maximum
    double height = 0.0;    // tau at the maximum
    double fwhm = 0.0;      // full width at half height above the baseline
};

struct ResonanceScan {
    SweepSeries series;  // parameter: w
    double baseline = 0.0;
    std::vector<ResonancePeak> peaks;
};

/// Peak analysis of an already computed tau(w) series.  A local maximum is
/// a peak when it exceeds median + 3 * IQR of the series.  The baseline is
/// the median over the series segments separated by peaks of each segment's
/// minimum.  Each peak is re-sampled on a window of five grid points either
/// side, zooming until the half-height crossings are resolved by at least
/// twenty samples; FWHM comes from linear interpolation of those crossings.
ResonanceScan analyse_resonances(const RingSpec& base, SweepSeries series,
                                 const SweepOptions& options = {});

/// Two-barrier ring: tau against well width w, with resonance detection.
/// An empty peak list is a valid outcome.
ResonanceScan scan_resonance(const RingSpec& base, double w_from, double w_to, int steps,
                             const SweepOptions& options = {});

struct PointResult {
    Complex reflection{};
    double tau = 0.0;
    double tau_error = 0.0;
    double residual = 0.0;
    double condition = 0.0;
};

PointResult point(const RingSpec& spec, const SweepOptions& options = {});

}  // namespace ringdelay
