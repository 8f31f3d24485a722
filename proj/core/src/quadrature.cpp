#include "hdj/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hdj {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 Cooley-Tukey, kernel exp(sign * 2*pi*i*jk/n), unnormalized.
void fft_radix2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

QuadratureGrid::QuadratureGrid(std::size_t n_points) : n_(n_points) {
    if (n_points < 8 || !is_power_of_two(n_points)) {
        throw std::invalid_argument(
            "QuadratureGrid: n_points must be a power of two >= 8, got " +
            std::to_string(n_points) + " (transform layout undefined)");
    }
    spacing_ = std::sqrt(kPi / static_cast<double>(n_));
    half_width_ = static_cast<double>(n_) * spacing_ / 2.0;
    points_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        points_[j] = (static_cast<double>(j) + 0.5 - static_cast<double>(n_) / 2.0) * spacing_;
    }
}

std::size_t QuadratureGrid::nearest_index(double q) const {
    // Cell index of q, clamped to the axis; midpoint ties round toward +q.
    const double u = q / spacing_ + static_cast<double>(n_) / 2.0 - 0.5;
    const double r = std::round(u);  // round() ties away from zero; u >= -1/2 here
    const auto j = static_cast<long long>(r);
    if (j < 0) return 0;
    if (j >= static_cast<long long>(n_)) return n_ - 1;
    return static_cast<std::size_t>(j);
}

GridPtr make_grid(std::size_t n_points) {
    return std::make_shared<const QuadratureGrid>(n_points);
}

GaussianParams::GaussianParams(double s_, double delta_s_) : s(s_), delta_s(delta_s_) {
    if (!(s > 0.0)) throw std::invalid_argument("GaussianParams: s must be > 0");
    if (delta_s < 0.0) throw std::invalid_argument("GaussianParams: delta_s must be >= 0");
}

double GaussianParams::r() const { return std::log(s); }

CvState::CvState(GridPtr grid, std::vector<cplx> amplitudes)
    : grid_(std::move(grid)), amps_(std::move(amplitudes)) {
    if (!grid_) throw std::invalid_argument("CvState: null grid");
    if (amps_.size() != grid_->size()) {
        throw std::invalid_argument("CvState: amplitude count does not match grid");
    }
}

double CvState::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

CvState CvState::renormalized() const {
    const double n = norm();
    if (n <= 0.0 || !std::isfinite(n)) {
        throw std::invalid_argument("CvState::renormalized: zero or non-finite norm");
    }
    std::vector<cplx> out(amps_);
    for (cplx& a : out) a /= n;
    return CvState(grid_, std::move(out));
}

CvState position_eigenstate(const GridPtr& grid, double q0) {
    const double bound = grid->half_width() - grid->spacing();
    if (std::abs(q0) > bound) {
        throw std::invalid_argument("position_eigenstate: |q0| = " + std::to_string(std::abs(q0)) +
                                    " exceeds half_width - spacing = " + std::to_string(bound));
    }
    std::vector<cplx> amps(grid->size(), cplx{0.0, 0.0});
    amps[grid->nearest_index(q0)] = cplx{1.0, 0.0};
    return CvState(grid, std::move(amps));
}

double paper_gaussian_amplitude(double q, double s) {
    return std::pow(kPi * s, -0.5) * std::exp(-q * q / (s * s));
}

CvState build_squeezed_state(const GridPtr& grid, const GaussianParams& params,
                             Convention convention, bool allow_unresolved) {
    const double s = params.s;
    const bool resolved = grid->spacing() <= s / 4.0 && grid->half_width() >= 5.0 * s;
    if (!resolved && !allow_unresolved) {
        throw std::invalid_argument(
            "build_squeezed_state: grid does not resolve s = " + std::to_string(s) +
            " (need spacing <= s/4 and half_width >= 5s); pass allow_unresolved to proceed");
    }
    const double root_h = std::sqrt(grid->spacing());
    std::vector<cplx> amps(grid->size());
    for (std::size_t j = 0; j < grid->size(); ++j) {
        amps[j] = cplx{paper_gaussian_amplitude(grid->point(j), s) * root_h, 0.0};
    }
    CvState state(grid, std::move(amps));
    return convention == Convention::paper ? state : state.renormalized();
}

CvState fourier(const CvState& state, FourierDirection direction) {
    const QuadratureGrid& g = state.grid();
    const std::size_t n = g.size();
    const double dn = static_cast<double>(n);

    // Kernel (1/sqrt(n)) exp(2i q_k q_j) with q_m = (m + c) h, c = (1-n)/2,
    // h^2 = pi/n. Expanding 2 q_k q_j = (2pi/n)(kj + c(k+j) + c^2) factors the
    // transform into ramp * unitary-IDFT * ramp * global phase; the inverse
    // direction conjugates everything.
    const double c = (1.0 - dn) / 2.0;
    const int sign = direction == FourierDirection::forward ? +1 : -1;
    const double ramp_step = sign * 2.0 * kPi * c / dn;
    const cplx global = std::polar(1.0, sign * 2.0 * kPi * c * c / dn);

    std::vector<cplx> work(n);
    for (std::size_t j = 0; j < n; ++j) {
        work[j] = state.amplitude(j) * std::polar(1.0, ramp_step * static_cast<double>(j));
    }
    fft_radix2(work, sign);
    const double scale = 1.0 / std::sqrt(dn);
    for (std::size_t k = 0; k < n; ++k) {
        work[k] *= global * std::polar(1.0, ramp_step * static_cast<double>(k)) * scale;
    }
    return CvState(state.grid_ptr(), std::move(work));
}

CvState apply_phase_function(const CvState& state, std::span<const std::uint8_t> f_values) {
    if (f_values.size() != state.size()) {
        throw std::invalid_argument("apply_phase_function: f is not defined on every grid point");
    }
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t j = 0; j < amps.size(); ++j) {
        if (f_values[j]) amps[j] = -amps[j];
    }
    return CvState(state.grid_ptr(), std::move(amps));
}

cplx overlap(const CvState& a, const CvState& b) {
    if (!a.grid().compatible(b.grid())) {
        throw std::invalid_argument("overlap: grid mismatch");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) {
        acc += std::conj(a.amplitude(j)) * b.amplitude(j);
    }
    return acc;
}

double fidelity(const CvState& a, const CvState& b) { return std::norm(overlap(a, b)); }

CvState parity(const CvState& state) {
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
    std::reverse(amps.begin(), amps.end());
    return CvState(state.grid_ptr(), std::move(amps));
}

double fitted_gaussian_width(const CvState& state) {
    double w = 0.0;
    double m2 = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double p = std::norm(state.amplitude(j));
        w += p;
        m2 += p * state.grid().point(j) * state.grid().point(j);
    }
    if (w <= 0.0) throw std::invalid_argument("fitted_gaussian_width: zero state");
    return 2.0 * std::sqrt(m2 / w);
}

}  // namespace hdj
