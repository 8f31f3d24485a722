#include "hdj/dualrail.hpp"

#include <cmath>
#include <stdexcept>

namespace hdj {

double DualRailState::norm() const { return std::sqrt(std::norm(a0) + std::norm(a1)); }

DualRailState make_dualrail(int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("make_dualrail: bit must be 0 or 1");
    return bit == 0 ? DualRailState{{1.0, 0.0}, {0.0, 0.0}}
                    : DualRailState{{0.0, 0.0}, {1.0, 0.0}};
}

DualRailState beam_splitter(const DualRailState& state, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return DualRailState{c * state.a0 + s * state.a1, s * state.a0 - c * state.a1};
}

DualRailState phase_shift(const DualRailState& state, double phi) {
    return DualRailState{state.a0, state.a1 * std::polar(1.0, phi)};
}

FeedforwardAncilla prepare_feedforward_ancilla(int f_value) {
    if (f_value != 0 && f_value != 1) {
        throw std::invalid_argument("prepare_feedforward_ancilla: f_value must be 0 or 1");
    }
    return FeedforwardAncilla{make_dualrail(f_value),
                              f_value == 0 ? Rail::lower : Rail::upper};
}

DualRailState kickback_eigenstate() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return DualRailState{{inv_sqrt2, 0.0}, {-inv_sqrt2, 0.0}};
}

double fidelity(const DualRailState& a, const DualRailState& b) {
    return std::norm(std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1);
}

double TwoQubitState::norm() const {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

TwoQubitState tensor(const DualRailState& control, const DualRailState& target) {
    TwoQubitState out;
    out.amps = {control.a0 * target.a0, control.a0 * target.a1,
                control.a1 * target.a0, control.a1 * target.a1};
    return out;
}

TwoQubitState cnot(const TwoQubitState& joint) {
    TwoQubitState out = joint;
    std::swap(out.amps[2], out.amps[3]);
    return out;
}

}  // namespace hdj
