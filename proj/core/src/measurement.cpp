#include "hdj/measurement.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace hdj {

namespace {

constexpr double kNullOutcomeThreshold = 1e-14;

void check_position_window(const QuadratureGrid& grid, const MeasurementWindow& w) {
    if (!(w.width > 0.0)) {
        throw std::invalid_argument("window: width must be > 0");
    }
    const double lo = w.center - w.width / 2.0;
    const double hi = w.center + w.width / 2.0;
    if (lo < -grid.half_width() || hi > grid.half_width()) {
        throw std::invalid_argument("window: [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "] extends outside the grid cutoff +-" +
                                    std::to_string(grid.half_width()));
    }
}

// Uniform double in [0, 1) from the standardized mt19937_64 word stream.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

CvState window_project_position_raw(const CvState& state, const MeasurementWindow& w) {
    if (w.basis != WindowBasis::position) {
        throw std::invalid_argument("window_project_position: window basis is not position");
    }
    check_position_window(state.grid(), w);
    const double lo = w.center - w.width / 2.0;
    const double hi = w.center + w.width / 2.0;
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t j = 0; j < amps.size(); ++j) {
        const double q = state.grid().point(j);
        if (q < lo || q > hi) amps[j] = cplx{0.0, 0.0};
    }
    return CvState(state.grid_ptr(), std::move(amps));
}

PositionProjection window_project_position(const CvState& state, const MeasurementWindow& w) {
    CvState sliced = window_project_position_raw(state, w);
    const double n = sliced.norm();
    const double probability = n * n;
    if (probability <= kNullOutcomeThreshold) {
        return PositionProjection{std::move(sliced), probability, true};
    }
    return PositionProjection{sliced.renormalized(), probability, false};
}

SqueezedProjection window_project_squeezed(const CvState& state, const MeasurementWindow& w) {
    if (w.basis != WindowBasis::squeezed) {
        throw std::invalid_argument("window_project_squeezed: window basis is not squeezed");
    }
    if (w.t_resolution < 1) {
        throw std::invalid_argument("window_project_squeezed: t_resolution must be >= 1");
    }
    if (w.t_resolution > 1 && w.t_resolution < 16) {
        throw std::invalid_argument("window_project_squeezed: t_resolution must be >= 16");
    }
    if (w.t_resolution > 1 && !(w.width > 0.0)) {
        throw std::invalid_argument("window_project_squeezed: width must be > 0");
    }
    const double lo = w.center - w.width / 2.0;
    if (!(lo > 0.0)) {
        throw std::invalid_argument("window_project_squeezed: window touches t <= 0");
    }

    const GridPtr& grid = state.grid_ptr();
    std::vector<cplx> acc(state.size(), cplx{0.0, 0.0});

    auto accumulate_node = [&](double t, double weight) {
        CvState ket = build_squeezed_state(grid, GaussianParams(t), Convention::normalized,
                                           /*allow_unresolved=*/true);
        const cplx coeff = weight * overlap(ket, state);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            acc[j] += coeff * ket.amplitude(j);
        }
    };

    if (w.t_resolution == 1) {
        accumulate_node(w.center, 1.0);
    } else {
        const int nodes = w.t_resolution;
        const double dt = w.width / static_cast<double>(nodes - 1);
        for (int i = 0; i < nodes; ++i) {
            const double t = lo + dt * static_cast<double>(i);
            const double weight = (i == 0 || i == nodes - 1) ? dt / 2.0 : dt;
            accumulate_node(t, weight);
        }
    }

    CvState result(grid, std::move(acc));
    const double n = result.norm();
    return SqueezedProjection{std::move(result), n * n};
}

std::size_t sample_outcome(const CvState& state, std::uint64_t seed) {
    return sample_outcomes(state, 1, seed).front();
}

std::vector<std::size_t> sample_outcomes(const CvState& state, std::size_t count,
                                         std::uint64_t seed) {
    const double total = state.norm() * state.norm();
    if (!(std::abs(total - 1.0) <= 1e-9)) {
        throw std::invalid_argument("sample_outcome: state must be normalized");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> draws;
    draws.reserve(count);
    for (std::size_t d = 0; d < count; ++d) {
        const double u = uniform01(rng) * total;
        double cdf = 0.0;
        std::size_t pick = state.size() - 1;
        for (std::size_t j = 0; j < state.size(); ++j) {
            cdf += std::norm(state.amplitude(j));
            if (u < cdf) {
                pick = j;
                break;
            }
        }
        draws.push_back(pick);
    }
    return draws;
}

}  // namespace hdj
