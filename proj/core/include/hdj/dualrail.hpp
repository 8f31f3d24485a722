#pragma once

#include <array>
#include <complex>

namespace hdj {

using cplx = std::complex<double>;

/// Logical dual-rail photonic qubit: a0 multiplies |0> (lower rail carries
/// the photon), a1 multiplies |1> (upper rail). Stored in the 2-dimensional
/// logical space; vacuum and two-photon leakage are out of scope.
struct DualRailState {
    cplx a0{0.0, 0.0};
    cplx a1{0.0, 0.0};

    double norm() const;
};

/// Which rail's photon source fired during feed-forward preparation.
enum class Rail { lower, upper };

/// Ancilla qubit produced by the classically conditioned photon sources,
/// together with the rail that fired.
struct FeedforwardAncilla {
    DualRailState state;
    Rail source_fired;
};

/// Basis state |bit> with unit amplitude. bit must be 0 or 1.
DualRailState make_dualrail(int bit);

/// Real involutive beam-splitter matrix [[cos t, sin t], [sin t, -cos t]].
/// theta = pi/4 is the 50-50 splitter realizing the Hadamard in this logical
/// ordering: |1> -> (|0> - |1>)/sqrt(2).
DualRailState beam_splitter(const DualRailState& state, double theta);

/// Phase shifter on the upper rail, diag(1, e^{i phi}).
DualRailState phase_shift(const DualRailState& state, double phi);

/// |f_value>_c prepared by firing exactly one of the two photon sources:
/// f = 0 fires the lower-rail source, f = 1 the upper-rail source.
FeedforwardAncilla prepare_feedforward_ancilla(int f_value);

/// The kickback eigenstate (|0> - |1>)/sqrt(2) Bob holds through the oracle.
DualRailState kickback_eigenstate();

/// |<a|b>|^2.
double fidelity(const DualRailState& a, const DualRailState& b);

/// Joint (control, target) state; amplitude order 00, 01, 10, 11 with the
/// control/ancilla bit first and the Bob bit second.
struct TwoQubitState {
    std::array<cplx, 4> amps{};

    double norm() const;
};

TwoQubitState tensor(const DualRailState& control, const DualRailState& target);

/// |x>_c |y>_q -> |x>_c |y xor x>_q: permutes amplitudes 10 <-> 11.
TwoQubitState cnot(const TwoQubitState& joint);

}  // namespace hdj
