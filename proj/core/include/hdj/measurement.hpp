#pragma once

#include <cstdint>
#include <vector>

#include "hdj/quadrature.hpp"

namespace hdj {

enum class WindowBasis { position, squeezed };

/// Projective measurement window.
///
/// position basis: the interval [center - width/2, center + width/2] on the
/// quadrature axis (Pi_{delta q0}). squeezed basis: the non-orthogonal
/// squeezed-state family integral over t in the same interval (Pi_{delta s}),
/// discretized with t_resolution trapezoid nodes.
struct MeasurementWindow {
    double center;
    double width;
    WindowBasis basis = WindowBasis::position;
    int t_resolution = 64;
};

struct PositionProjection {
    CvState state;        // renormalized unless null_outcome
    double probability;   // squared norm of the kept slice
    bool null_outcome;    // probability <= 1e-14; state left as the raw slice
};

/// Zeroes amplitudes outside the window; no renormalization. Grid points on
/// the window boundary are kept (closed interval).
CvState window_project_position_raw(const CvState& state, const MeasurementWindow& w);

/// Born-rule window measurement: probability is the squared norm of the kept
/// slice; the projected state is renormalized only when the probability
/// exceeds 1e-14, otherwise the null_outcome flag is set and the raw slice is
/// returned untouched.
PositionProjection window_project_position(const CvState& state, const MeasurementWindow& w);

struct SqueezedProjection {
    CvState state;  // A|psi>, not renormalized
    double weight;  // squared norm of A|psi>
};

/// Applies A = sum_t w_t |t><t| with |t> normalized-convention squeezed states
/// and w_t trapezoidal weights over t_resolution nodes in
/// [center - width/2, center + width/2]. A is Hermitian but not idempotent
/// (the family is non-orthogonal): the operator is applied literally and the
/// squared norm is reported as a weight, not a probability. t_resolution = 1
/// degenerates to the single-node operator |center><center|.
SqueezedProjection window_project_squeezed(const CvState& state, const MeasurementWindow& w);

/// One index drawn from |psi_j|^2. Reproducible: the draw depends only on the
/// state and the seed, not on platform-defined distributions.
std::size_t sample_outcome(const CvState& state, std::uint64_t seed);

/// Sequence of count draws from one seeded generator.
std::vector<std::size_t> sample_outcomes(const CvState& state, std::size_t count,
                                         std::uint64_t seed);

}  // namespace hdj
