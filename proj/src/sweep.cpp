#include "ringdelay/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "ringdelay/errors.hpp"
#include "ringdelay/scattering.hpp"

namespace ringdelay {
namespace {

constexpr int kPeakWindow = 5;
constexpr int kRefineSamples = 101;
constexpr int kMinSamplesPerWidth = 20;
constexpr int kMaxRefinements = 40;

const ReflectionProvider& provider_of(const SweepOptions& options) {
    static const ReflectionProvider solver = reflection_amplitude;
    return options.reflection ? options.reflection : solver;
}

PhaseTimeResult evaluate(const RingSpec& spec, const SweepOptions& options) {
    const double h = options.step.value_or(default_step(spec.energy));
    return phase_time(spec, h, provider_of(options));
}

struct RowOutcome {
    PhaseTimeResult result;
    std::exception_ptr error;
};

// Rows are evaluated independently (possibly in parallel) and collected in
// grid order; the lowest failing row determines the reported error.
SweepSeries run_sweep(const std::string& name, const std::vector<double>& grid,
                      const std::function<RingSpec(double)>& make_spec, const SweepOptions& options) {
    std::vector<RingSpec> specs;
    specs.reserve(grid.size());
    for (double x : grid) specs.push_back(make_spec(x));

    std::vector<RowOutcome> outcomes(grid.size());
    auto work = [&](std::size_t i) {
        try {
            outcomes[i].result = evaluate(specs[i], options);
        } catch (...) {
            outcomes[i].error = std::current_exception();
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) work(i);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < grid.size(); i += threads) work(i);
            });
        }
    }

    SweepSeries series;
    series.parameter_name = name;
    series.rows.reserve(grid.size());
    std::vector<double> phases;
    phases.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (outcomes[i].error) {
            try {
                std::rethrow_exception(outcomes[i].error);
            } catch (const NumericalError& e) {
                throw SweepError(name, grid[i], e.what());
            }
        }
        const PhaseTimeResult& r = outcomes[i].result;
        series.rows.push_back({grid[i], r.tau, std::norm(r.reflection), 0.0, r.error_estimate});
        phases.push_back(principal_phase(r.reflection));
    }
    const auto unwrapped = unwrap(phases);
    for (std::size_t i = 0; i < grid.size(); ++i) series.rows[i].phase = unwrapped[i];
    return series;
}

void require_tunnelling(const RingSpec& base, bool both) {
    if (!(base.v1 > base.energy) || (both && !(base.v3 > base.energy))) {
        throw InvalidArgument("barriers must exceed the incident energy for this scan");
    }
}

// Type-7 (linear interpolation) sample quantile of sorted data.
double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return quantile(values, 0.5);
}

struct Crossing {
    bool found = false;
    double x = 0.0;
};

// Walks from the maximum at j in direction dir until tau drops below level.
Crossing half_crossing(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t j, int dir,
                       double level) {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(j);
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    while (true) {
        const std::ptrdiff_t next = i + dir;
        if (next < 0 || next >= n) return {};
        if (ys[next] < level) {
            const double t = (ys[i] - level) / (ys[i] - ys[next]);
            return {true, xs[i] + t * (xs[next] - xs[i])};
        }
        i = next;
    }
}

std::optional<ResonancePeak> refine_peak(const std::function<double(double)>& tau_at, double lo, double hi,
                                         double range_lo, double range_hi, double baseline) {
    std::optional<ResonancePeak> best;
    for (int iter = 0; iter < kMaxRefinements; ++iter) {
        std::vector<double> xs(kRefineSamples), ys(kRefineSamples);
        const double dx = (hi - lo) / (kRefineSamples - 1);
        for (int s = 0; s < kRefineSamples; ++s) {
            xs[s] = s + 1 == kRefineSamples ? hi : lo + s * dx;
            ys[s] = tau_at(xs[s]);
        }
        const auto j = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
        const double level = baseline + 0.5 * (ys[j] - baseline);
        const Crossing left = half_crossing(xs, ys, j, -1, level);
        const Crossing right = half_crossing(xs, ys, j, +1, level);

        if (!left.found || !right.found) {
            // Window narrower than the peak: widen towards the missing side.
            const double span = hi - lo;
            const double new_lo = left.found ? lo : std::max(range_lo, lo - span);
            const double new_hi = right.found ? hi : std::min(range_hi, hi + span);
            if (new_lo == lo && new_hi == hi) return std::nullopt;
            lo = new_lo;
            hi = new_hi;
            continue;
        }
        const double fwhm = right.x - left.x;
        best = ResonancePeak{xs[j], ys[j], fwhm};
        if (fwhm >= kMinSamplesPerWidth * dx) return best;
        const double half_span = std::max(2.0 * fwhm, 4.0 * dx);
        lo = std::max(range_lo, xs[j] - half_span);
        hi = std::min(range_hi, xs[j] + half_span);
    }
    return best;
}

}  // namespace

std::vector<double> sweep_grid(double from, double to, int steps) {
    if (steps < 2) {
        throw InvalidArgument("a sweep needs at least 2 steps, got " + std::to_string(steps));
    }
    if (!std::isfinite(from) || !std::isfinite(to) || !(from < to)) {
        throw InvalidArgument("sweep range must satisfy from < to");
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double span = to - from;
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] =
            i + 1 == steps ? to : from + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return grid;
}

SweepSeries scan_length(const RingSpec& base, double l_from, double l_to, int steps, const SweepOptions& options) {
    if (base.lb3 != 0.0 || base.w != 0.0) {
        throw InvalidArgument("scan-length needs a single-barrier ring (lb3 = 0, w = 0)");
    }
    const auto grid = sweep_grid(l_from, l_to, steps);
    return run_sweep("L", grid, [&](double l) {
        RingSpec s = base;
        s.lb1 = l;
        return s;
    }, options);
}

double visibility(const SweepSeries& series) {
    if (series.rows.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(series.rows.begin(), series.rows.end(),
                                              [](const SweepRow& a, const SweepRow& b) { return a.tau < b.tau; });
    return (hi->tau - lo->tau) / (hi->tau + lo->tau);
}

FluxScan scan_flux(const RingSpec& base, double phi_from, double phi_to, int steps, const SweepOptions& options) {
    const auto grid = sweep_grid(phi_from, phi_to, steps);
    FluxScan out;
    out.series = run_sweep("phi", grid, [&](double phi) {
        RingSpec s = base;
        s.alpha1 = flux_to_phase(phi);
        s.alpha2 = 0.0;
        s.alpha3 = 0.0;
        return s;
    }, options);
    out.visibility = visibility(out.series);
    double sum = 0.0;
    for (const SweepRow& r : out.series.rows) sum += r.tau;
    out.mean_tau = sum / static_cast<double>(out.series.rows.size());
    return out;
}

WellScan scan_well(const RingSpec& base, double lb1_from, double lb1_to, int steps, const SweepOptions& options) {
    if (!(base.lb3 > 0.0)) {
        throw InvalidArgument("scan-well needs a two-barrier ring (lb3 > 0)");
    }
    const auto grid = sweep_grid(lb1_from, lb1_to, steps);
    WellScan out;
    out.series = run_sweep("lb1", grid, [&](double lb1) {
        RingSpec s = base;
        s.lb1 = lb1;
        return s;
    }, options);
    out.saturated_tau = out.series.rows.back().tau;
    return out;
}

ResonanceScan analyse_resonances(const RingSpec& base, SweepSeries series, const SweepOptions& options) {
    ResonanceScan out;
    const auto& rows = series.rows;
    const std::size_t n = rows.size();
    if (n < 3) {
        out.series = std::move(series);
        return out;
    }

    std::vector<double> taus(n);
    for (std::size_t i = 0; i < n; ++i) taus[i] = rows[i].tau;
    std::vector<double> sorted = taus;
    std::sort(sorted.begin(), sorted.end());
    const double med = quantile(sorted, 0.5);
    const double threshold = med + 3.0 * (quantile(sorted, 0.75) - quantile(sorted, 0.25));

    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (taus[i] > taus[i - 1] && taus[i] >= taus[i + 1] && taus[i] > threshold) maxima.push_back(i);
    }

    // Floor of each peak-free segment.
    std::vector<double> floors;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= maxima.size(); ++k) {
        const std::size_t stop = k < maxima.size() ? maxima[k] : n;
        if (stop > start) floors.push_back(*std::min_element(taus.begin() + start, taus.begin() + stop));
        start = stop + 1;
    }
    out.baseline = floors.empty() ? med : median_of(floors);

    const double range_lo = rows.front().parameter;
    const double range_hi = rows.back().parameter;
    const std::function<double(double)> tau_at = [&](double w) {
        RingSpec s = base;
        s.w = w;
        try {
            return evaluate(s, options).tau;
        } catch (const NumericalError& e) {
            throw SweepError(series.parameter_name, w, e.what());
        }
    };
    for (std::size_t i : maxima) {
        const double lo = rows[i >= kPeakWindow ? i - kPeakWindow : 0].parameter;
        const double hi = rows[std::min(n - 1, i + kPeakWindow)].parameter;
        if (auto peak = refine_peak(tau_at, lo, hi, range_lo, range_hi, out.baseline)) {
            out.peaks.push_back(*peak);
        }
    }
    out.series = std::move(series);
    return out;
}

ResonanceScan scan_resonance(const RingSpec& base, double w_from, double w_to, int steps,
                             const SweepOptions& options) {
    if (!(base.lb1 > 0.0) || !(base.lb3 > 0.0)) {
        throw InvalidArgument("scan-resonance needs two barriers (lb1 > 0, lb3 > 0)");
    }
    require_tunnelling(base, true);
    const auto grid = sweep_grid(w_from, w_to, steps);
    SweepSeries series = run_sweep("w", grid, [&](double w) {
        RingSpec s = base;
        s.w = w;
        return s;
    }, options);
    return analyse_resonances(base, std::move(series), options);
}

PointResult point(const RingSpec& spec, const SweepOptions& options) {
    const BoundarySystem system = assemble(spec);
    const ScatteringSolution solution = solve(system);
    const PhaseTimeResult t = evaluate(spec, options);
    return {solution.r, t.tau, t.error_estimate, residual(solution, spec), condition_number(system)};
}

}  // namespace ringdelay
