#pragma once

// Boundary-value problem for the ring and lead.
//
// Each ring segment s (length l, wavevector q) carries the wavefunction
//
//     psi_s(x) = a_s exp(i q x) + b_s exp(-i q (x - l)),      0 <= x <= l,
//
// i.e. the backward wave is referenced to the far end of the segment.  For an
// evanescent segment (q = i kappa) both basis functions have modulus <= 1 on
// the segment, so no entry of the linear system can overflow or cancel no
// matter how opaque the barrier is.  The plane-wave coefficient B of the
// conventional form A exp(iqx) + B exp(-iqx) is b_s exp(i q l); see
// plane_wave_amplitudes().
//
// Flux enters only through boundary conditions: the value and derivative of
// psi_s at the clockwise end of segment s are multiplied by exp(i alpha_s)
// before being matched at the next node.  The lead wavefunction, in terms of
// the distance x >= 0 from J, is exp(-i k x) + R exp(i k x).
//
// Unknown ordering: (R, a1, b1, a2, b2, a3, b3).
// Equation ordering (all derivatives taken outward from the node):
//   0  continuity   J : lead = segment 1 start
//   1  continuity   J : segment 3 end = lead
//   2  current      J
//   3  continuity  P1 : segment 1 end = segment 2 start
//   4  current     P1
//   5  continuity  P2 : segment 2 end = segment 3 start
//   6  current     P2
// Each row is divided by its largest entry modulus after assembly.

#include <array>
#include <cstddef>

#include "ringdelay/ring_model.hpp"

namespace ringdelay {

inline constexpr std::size_t kUnknowns = 7;
inline constexpr double kPivotTolerance = 1e-14;

using Vector7 = std::array<Complex, kUnknowns>;
using Matrix7 = std::array<Vector7, kUnknowns>;

enum class Region {
    lead,      // I
    barrier1,  // II
    well,      // III
    barrier3,  // IV
};

struct BoundarySystem {
    Matrix7 matrix{};
    Vector7 rhs{};
};

/// Amplitudes in the balanced basis described above.
struct ScatteringSolution {
    Complex r, a1, b1, a2, b2, a3, b3;

    Vector7 as_vector() const noexcept { return {r, a1, b1, a2, b2, a3, b3}; }
    static ScatteringSolution from_vector(const Vector7& x) noexcept {
        return {x[0], x[1], x[2], x[3], x[4], x[5], x[6]};
    }
};

/// Coefficients of A exp(iqx) + B exp(-iqx) per region.  For very opaque
/// barriers the B coefficients underflow to zero; the balanced amplitudes
/// remain exact.
struct PlaneWaveAmplitudes {
    Complex r, a1, b1, a2, b2, a3, b3;
};

PlaneWaveAmplitudes plane_wave_amplitudes(const ScatteringSolution& solution, const RingSpec& spec);

/// Builds the seven boundary equations.  Validates the spec first.
BoundarySystem assemble(const RingSpec& spec, double critical_tolerance = kDefaultCriticalTolerance);

/// Gaussian elimination with partial pivoting.  When a pivot falls below
/// kPivotTolerance the system is re-solved through its singular value
/// decomposition; this succeeds only if the null space leaves R untouched
/// (bound states decoupled from the lead) and raises SingularSystem otherwise.
ScatteringSolution solve(const BoundarySystem& system);

/// 2-norm condition number of the (row-equilibrated) matrix.
double condition_number(const BoundarySystem& system);

/// Shorthand for solve(assemble(spec)).r.
Complex reflection_amplitude(const RingSpec& spec);

Complex evaluate_wavefunction(const ScatteringSolution& solution, const RingSpec& spec, Region region,
                              double x);

/// d psi / dx in the same local coordinate as evaluate_wavefunction.
Complex evaluate_derivative(const ScatteringSolution& solution, const RingSpec& spec, Region region,
                            double x);

/// Largest violation of the seven continuity and current conditions,
/// evaluated directly from the region wavefunctions.
double residual(const ScatteringSolution& solution, const RingSpec& spec);

}  // namespace ringdelay
