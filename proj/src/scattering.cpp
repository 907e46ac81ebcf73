#include "ringdelay/scattering.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ringdelay/errors.hpp"
#include "ringdelay/format.hpp"

namespace ringdelay {
namespace {

constexpr Complex kI{0.0, 1.0};

// Singular values below this fraction of the largest are treated as zero in
// the rank-deficient fallback.
constexpr double kRankTolerance = 1e-12;
// Largest R component a null vector may carry for R to count as determined.
constexpr double kNullReflectionTolerance = 1e-8;

struct Segment {
    Complex q;
    double length;
    Complex flux;  // exp(i alpha_s)
};

// exp(i q x) for q either real or positive imaginary, x >= 0.
Complex propagate(Complex q, double x) {
    if (q.imag() > 0.0) {
        return {std::exp(-q.imag() * x), 0.0};
    }
    return std::polar(1.0, q.real() * x);
}

std::array<Segment, 3> segments(const RingSpec& spec, double critical_tolerance) {
    const Complex k = wavevector(spec.energy, 0.0, critical_tolerance).value();
    return {{
        {wavevector(spec.energy, spec.v1, critical_tolerance).value(), spec.lb1, std::polar(1.0, spec.alpha1)},
        {k, spec.w, std::polar(1.0, spec.alpha2)},
        {wavevector(spec.energy, spec.v3, critical_tolerance).value(), spec.lb3, std::polar(1.0, spec.alpha3)},
    }};
}

using EigenMatrix = Eigen::Matrix<Complex, 7, 7>;
using EigenVector = Eigen::Matrix<Complex, 7, 1>;

EigenMatrix to_eigen(const Matrix7& m) {
    EigenMatrix e;
    for (std::size_t i = 0; i < kUnknowns; ++i) {
        for (std::size_t j = 0; j < kUnknowns; ++j) {
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
        }
    }
    return e;
}

ScatteringSolution solve_rank_deficient(const BoundarySystem& system) {
    const EigenMatrix m = to_eigen(system.matrix);
    EigenVector b;
    for (std::size_t i = 0; i < kUnknowns; ++i) b(static_cast<Eigen::Index>(i)) = system.rhs[i];

    const Eigen::JacobiSVD<EigenMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cutoff = kRankTolerance * sigma(0);

    EigenVector x = EigenVector::Zero();
    for (Eigen::Index j = 0; j < 7; ++j) {
        if (sigma(j) > cutoff) {
            const Complex coeff = svd.matrixU().col(j).dot(b) / sigma(j);
            x += coeff * svd.matrixV().col(j);
        } else if (std::abs(svd.matrixV()(0, j)) > kNullReflectionTolerance) {
            throw SingularSystem("boundary system is singular and does not determine R (sigma_min/sigma_max = " +
                                 format_double(sigma(6) / sigma(0)) + ")");
        }
    }
    Vector7 out;
    for (std::size_t i = 0; i < kUnknowns; ++i) out[i] = x(static_cast<Eigen::Index>(i));
    return ScatteringSolution::from_vector(out);
}

struct Basis {
    Complex forward;   // exp(i q x)
    Complex backward;  // exp(-i q (x - l))
};

Basis basis_at(const Segment& s, double x) {
    return {propagate(s.q, x), propagate(s.q, s.length - x)};
}

std::pair<const Segment*, std::pair<Complex, Complex>> segment_for(const std::array<Segment, 3>& segs,
                                                                   const ScatteringSolution& sol,
                                                                   Region region) {
    switch (region) {
        case Region::barrier1: return {&segs[0], {sol.a1, sol.b1}};
        case Region::well: return {&segs[1], {sol.a2, sol.b2}};
        case Region::barrier3: return {&segs[2], {sol.a3, sol.b3}};
        case Region::lead: break;
    }
    return {nullptr, {}};
}

void check_extent(Region region, double x, double length) {
    if (!(x >= 0.0) || (region != Region::lead && x > length)) {
        throw OutOfRange("coordinate " + format_double(x) + " outside region extent [0, " +
                         (region == Region::lead ? std::string("inf") : format_double(length)) + "]");
    }
}

}  // namespace

PlaneWaveAmplitudes plane_wave_amplitudes(const ScatteringSolution& s, const RingSpec& spec) {
    const auto segs = segments(spec, 0.0);
    return {s.r,
            s.a1, s.b1 * propagate(segs[0].q, segs[0].length),
            s.a2, s.b2 * propagate(segs[1].q, segs[1].length),
            s.a3, s.b3 * propagate(segs[2].q, segs[2].length)};
}

BoundarySystem assemble(const RingSpec& spec, double critical_tolerance) {
    validate(spec, critical_tolerance);
    const auto segs = segments(spec, critical_tolerance);
    const Complex k = segs[1].q;

    // e: exp(i q l), p: flux factor, iq: derivative prefactor, for each segment.
    const Complex e1 = propagate(segs[0].q, segs[0].length);
    const Complex e2 = propagate(segs[1].q, segs[1].length);
    const Complex e3 = propagate(segs[2].q, segs[2].length);
    const Complex p1 = segs[0].flux, p2 = segs[1].flux, p3 = segs[2].flux;
    const Complex iq1 = kI * segs[0].q, ik = kI * k, iq3 = kI * segs[2].q;

    BoundarySystem sys;
    auto& m = sys.matrix;
    auto& b = sys.rhs;

    // J: 1 + R = psi1(0)
    m[0] = {1.0, -1.0, -e1, 0.0, 0.0, 0.0, 0.0};
    b[0] = -1.0;
    // J: p3 psi3(lb3) = 1 + R
    m[1] = {1.0, 0.0, 0.0, 0.0, 0.0, -p3 * e3, -p3};
    b[1] = -1.0;
    // J: -ik(1 - R) + psi1'(0) - p3 psi3'(lb3) = 0
    m[2] = {ik, iq1, -iq1 * e1, 0.0, 0.0, -p3 * iq3 * e3, p3 * iq3};
    b[2] = ik;
    // P1: p1 psi1(lb1) = psi2(0)
    m[3] = {0.0, p1 * e1, p1, -1.0, -e2, 0.0, 0.0};
    b[3] = 0.0;
    // P1: -p1 psi1'(lb1) + psi2'(0) = 0
    m[4] = {0.0, -p1 * iq1 * e1, p1 * iq1, ik, -ik * e2, 0.0, 0.0};
    b[4] = 0.0;
    // P2: p2 psi2(w) = psi3(0)
    m[5] = {0.0, 0.0, 0.0, p2 * e2, p2, -1.0, -e3};
    b[5] = 0.0;
    // P2: -p2 psi2'(w) + psi3'(0) = 0
    m[6] = {0.0, 0.0, 0.0, -p2 * ik * e2, p2 * ik, iq3, -iq3 * e3};
    b[6] = 0.0;

    for (std::size_t i = 0; i < kUnknowns; ++i) {
        double scale = 0.0;
        for (const Complex& v : m[i]) scale = std::max(scale, std::abs(v));
        for (Complex& v : m[i]) v /= scale;
        b[i] /= scale;
    }
    return sys;
}

ScatteringSolution solve(const BoundarySystem& system) {
    Matrix7 a = system.matrix;
    Vector7 b = system.rhs;

    for (std::size_t col = 0; col < kUnknowns; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col][col]);
        for (std::size_t row = col + 1; row < kUnknowns; ++row) {
            const double mag = std::abs(a[row][col]);
            if (mag > best) {
                best = mag;
                pivot = row;
            }
        }
        if (!(best >= kPivotTolerance)) {
            return solve_rank_deficient(system);
        }
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t row = col + 1; row < kUnknowns; ++row) {
            const Complex factor = a[row][col] / a[col][col];
            if (factor == Complex{}) continue;
            for (std::size_t j = col; j < kUnknowns; ++j) a[row][j] -= factor * a[col][j];
            b[row] -= factor * b[col];
        }
    }

    Vector7 x{};
    for (std::size_t i = kUnknowns; i-- > 0;) {
        Complex acc = b[i];
        for (std::size_t j = i + 1; j < kUnknowns; ++j) acc -= a[i][j] * x[j];
        x[i] = acc / a[i][i];
    }
    return ScatteringSolution::from_vector(x);
}

double condition_number(const BoundarySystem& system) {
    const Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(system.matrix));
    const auto& sigma = svd.singularValues();
    return sigma(6) > 0.0 ? sigma(0) / sigma(6) : std::numeric_limits<double>::infinity();
}

Complex reflection_amplitude(const RingSpec& spec) {
    return solve(assemble(spec)).r;
}

Complex evaluate_wavefunction(const ScatteringSolution& solution, const RingSpec& spec, Region region,
                              double x) {
    const auto segs = segments(spec, 0.0);
    if (region == Region::lead) {
        check_extent(region, x, 0.0);
        const Complex k = segs[1].q;
        return propagate(k, x) * solution.r + std::conj(propagate(k, x));
    }
    const auto [seg, amp] = segment_for(segs, solution, region);
    check_extent(region, x, seg->length);
    const Basis f = basis_at(*seg, x);
    return amp.first * f.forward + amp.second * f.backward;
}

Complex evaluate_derivative(const ScatteringSolution& solution, const RingSpec& spec, Region region,
                            double x) {
    const auto segs = segments(spec, 0.0);
    if (region == Region::lead) {
        check_extent(region, x, 0.0);
        const Complex k = segs[1].q;
        return kI * k * (propagate(k, x) * solution.r - std::conj(propagate(k, x)));
    }
    const auto [seg, amp] = segment_for(segs, solution, region);
    check_extent(region, x, seg->length);
    const Basis f = basis_at(*seg, x);
    return kI * seg->q * (amp.first * f.forward - amp.second * f.backward);
}

double residual(const ScatteringSolution& s, const RingSpec& spec) {
    const auto segs = segments(spec, 0.0);
    const Complex p1 = segs[0].flux, p2 = segs[1].flux, p3 = segs[2].flux;
    auto psi = [&](Region r, double x) { return evaluate_wavefunction(s, spec, r, x); };
    auto dpsi = [&](Region r, double x) { return evaluate_derivative(s, spec, r, x); };

    const Complex lead = psi(Region::lead, 0.0);
    const Complex violations[] = {
        lead - psi(Region::barrier1, 0.0),
        p3 * psi(Region::barrier3, spec.lb3) - lead,
        dpsi(Region::lead, 0.0) + dpsi(Region::barrier1, 0.0) - p3 * dpsi(Region::barrier3, spec.lb3),
        p1 * psi(Region::barrier1, spec.lb1) - psi(Region::well, 0.0),
        -p1 * dpsi(Region::barrier1, spec.lb1) + dpsi(Region::well, 0.0),
        p2 * psi(Region::well, spec.w) - psi(Region::barrier3, 0.0),
        -p2 * dpsi(Region::well, spec.w) + dpsi(Region::barrier3, 0.0),
    };
    double worst = 0.0;
    for (const Complex& v : violations) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace ringdelay
