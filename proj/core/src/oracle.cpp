#include "hdj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hdj {

namespace {

constexpr double kKickbackInfidelity = 1e-9;
constexpr double kResidualAncilla = 1e-9;

// Uniform integer in [0, m) by rejection on the raw mt19937_64 stream.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / m * m;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % m;
}

}  // namespace

const char* to_string(PromiseClass c) {
    return c == PromiseClass::constant ? "constant" : "balanced";
}

OracleSpec::OracleSpec(std::vector<std::uint8_t> values, PromiseClass declared_class,
                       std::string label)
    : values_(std::move(values)), declared_(declared_class), label_(std::move(label)) {
    if (values_.empty()) throw std::invalid_argument("OracleSpec: empty value vector");
    for (std::uint8_t v : values_) {
        if (v > 1) throw std::invalid_argument("OracleSpec: values must be bits");
    }
}

std::size_t OracleSpec::ones() const {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

PromiseClass validate_promise(const OracleSpec& f) {
    const std::size_t n = f.domain_size();
    const std::size_t k = f.ones();
    PromiseClass verified;
    if (k == 0 || k == n) {
        verified = PromiseClass::constant;
    } else if (2 * k == n) {
        verified = PromiseClass::balanced;
    } else {
        throw std::invalid_argument("validate_promise: '" + f.label() + "' violates the promise: " +
                                    std::to_string(k) + " ones out of " + std::to_string(n) +
                                    " (neither 0, n, nor n/2)");
    }
    if (verified != f.declared_class()) {
        throw std::invalid_argument("validate_promise: '" + f.label() + "' is " +
                                    to_string(verified) + " but declared " +
                                    to_string(f.declared_class()));
    }
    return verified;
}

const char* to_string(FunctionKind k) {
    switch (k) {
        case FunctionKind::const0: return "const0";
        case FunctionKind::const1: return "const1";
        case FunctionKind::step: return "step";
        case FunctionKind::parity_bins: return "parity_bins";
        case FunctionKind::random_balanced: return "random_balanced";
    }
    return "?";
}

FunctionKind parse_function_kind(const std::string& name) {
    if (name == "const0") return FunctionKind::const0;
    if (name == "const1") return FunctionKind::const1;
    if (name == "step") return FunctionKind::step;
    if (name == "parity_bins") return FunctionKind::parity_bins;
    if (name == "random_balanced") return FunctionKind::random_balanced;
    throw std::invalid_argument("unknown function kind '" + name + "'");
}

OracleSpec make_function(FunctionKind kind, const QuadratureGrid& grid, std::size_t width,
                         std::uint64_t seed) {
    const std::size_t n = grid.size();
    std::vector<std::uint8_t> bits(n, 0);
    switch (kind) {
        case FunctionKind::const0:
            return OracleSpec(std::move(bits), PromiseClass::constant, "const0");
        case FunctionKind::const1:
            std::fill(bits.begin(), bits.end(), std::uint8_t{1});
            return OracleSpec(std::move(bits), PromiseClass::constant, "const1");
        case FunctionKind::step:
            for (std::size_t j = 0; j < n; ++j) bits[j] = grid.point(j) >= 0.0 ? 1 : 0;
            return OracleSpec(std::move(bits), PromiseClass::balanced, "step");
        case FunctionKind::parity_bins: {
            if (width == 0 || n % width != 0 || (n / width) % 2 != 0) {
                throw std::invalid_argument(
                    "make_function: parity_bins width must split the grid into an even number "
                    "of bins, got width " + std::to_string(width) + " for n " + std::to_string(n));
            }
            for (std::size_t j = 0; j < n; ++j) bits[j] = (j / width) % 2;
            return OracleSpec(std::move(bits), PromiseClass::balanced,
                              "parity_bins(" + std::to_string(width) + ")");
        }
        case FunctionKind::random_balanced: {
            std::vector<std::size_t> idx(n);
            for (std::size_t j = 0; j < n; ++j) idx[j] = j;
            std::mt19937_64 rng(seed);
            for (std::size_t j = 0; j < n / 2; ++j) {
                const std::size_t pick = j + uniform_below(rng, n - j);
                std::swap(idx[j], idx[pick]);
                bits[idx[j]] = 1;
            }
            return OracleSpec(std::move(bits), PromiseClass::balanced,
                              "random_balanced(" + std::to_string(seed) + ")");
        }
    }
    throw std::invalid_argument("make_function: unknown kind");
}

std::string to_json(const OracleSpec& f) {
    std::string values;
    values.reserve(f.domain_size());
    for (std::uint8_t v : f.values()) values.push_back(v ? '1' : '0');
    return std::string("{\"label\": \"") + f.label() + "\", \"declared_class\": \"" +
           to_string(f.declared_class()) + "\", \"values\": \"" + values + "\"}";
}

HybridState::HybridState(GridPtr grid, std::vector<cplx> amplitudes)
    : grid_(std::move(grid)), amps_(std::move(amplitudes)) {
    if (!grid_) throw std::invalid_argument("HybridState: null grid");
    if (amps_.size() != grid_->size() * 4) {
        throw std::invalid_argument("HybridState: amplitude count does not match grid x 2 x 2");
    }
}

HybridState HybridState::product(const CvState& cv, const DualRailState& ancilla,
                                 const DualRailState& bob) {
    const std::size_t n = cv.size();
    std::vector<cplx> amps(n * 4);
    const cplx ca[2] = {ancilla.a0, ancilla.a1};
    const cplx cb[2] = {bob.a0, bob.a1};
    for (std::size_t j = 0; j < n; ++j) {
        for (int c = 0; c < 2; ++c) {
            for (int b = 0; b < 2; ++b) {
                amps[j * 4 + static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(b)] =
                    cv.amplitude(j) * ca[c] * cb[b];
            }
        }
    }
    return HybridState(cv.grid_ptr(), std::move(amps));
}

double HybridState::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

double HybridState::ancilla_population(int c) const {
    double s = 0.0;
    for (std::size_t j = 0; j < points(); ++j) {
        s += std::norm(amplitude(j, c, 0)) + std::norm(amplitude(j, c, 1));
    }
    return s;
}

std::pair<CvState, DualRailState> apply_oracle_semiclassical(const CvState& cv,
                                                             const DualRailState& bob,
                                                             const OracleSpec& f) {
    if (fidelity(bob, kickback_eigenstate()) < 1.0 - kKickbackInfidelity) {
        throw std::invalid_argument(
            "apply_oracle_semiclassical: Bob must hold the kickback eigenstate "
            "(|0> - |1>)/sqrt(2)");
    }
    return {apply_phase_function(cv, f.values()), bob};
}

HybridState apply_oracle_coherent(const HybridState& state, const OracleSpec& f) {
    if (f.domain_size() != state.points()) {
        throw std::invalid_argument("apply_oracle_coherent: f domain does not match grid");
    }
    if (state.ancilla_population(1) > kResidualAncilla) {
        throw std::invalid_argument("apply_oracle_coherent: ancilla not cleared to |0>");
    }
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
    const std::size_t n = state.points();
    for (std::size_t j = 0; j < n; ++j) {
        cplx* branch = amps.data() + j * 4;  // [c0b0, c0b1, c1b0, c1b1]
        if (f.values()[j]) {                 // controlled preparation: X on the ancilla
            std::swap(branch[0], branch[2]);
            std::swap(branch[1], branch[3]);
        }
        std::swap(branch[2], branch[3]);  // CNOT ancilla -> Bob on every branch
    }
    return HybridState(state.grid_ptr(), std::move(amps));
}

HybridState uncompute_ancilla(const HybridState& state, const OracleSpec& f) {
    if (f.domain_size() != state.points()) {
        throw std::invalid_argument("uncompute_ancilla: f domain does not match grid");
    }
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
    const std::size_t n = state.points();
    for (std::size_t j = 0; j < n; ++j) {
        cplx* branch = amps.data() + j * 4;
        if (f.values()[j]) {
            std::swap(branch[0], branch[2]);
            std::swap(branch[1], branch[3]);
        }
    }
    HybridState out(state.grid_ptr(), std::move(amps));
    const double residual = out.ancilla_population(1);
    if (residual > kResidualAncilla) {
        throw std::invalid_argument("uncompute_ancilla: residual ancilla population " +
                                    std::to_string(residual) +
                                    "; state was produced with a different f");
    }
    return out;
}

namespace {

// Window probability of an (n x 2) CV x Bob block after the inverse Fourier
// gate on the CV index: sum_b ||Pi F^-1 column_b||^2.
double window_probability_cvbob(const GridPtr& grid, const std::vector<cplx>& block,
                                const MeasurementWindow& window) {
    const std::size_t n = grid->size();
    double prob = 0.0;
    for (int b = 0; b < 2; ++b) {
        std::vector<cplx> column(n);
        for (std::size_t j = 0; j < n; ++j) column[j] = block[j * 2 + static_cast<std::size_t>(b)];
        CvState cv(grid, std::move(column));
        CvState evolved = fourier(cv, FourierDirection::inverse);
        CvState sliced = window_project_position_raw(evolved, window);
        const double norm = sliced.norm();
        prob += norm * norm;
    }
    return prob;
}

}  // namespace

DiscardReport ancilla_discard_study(const HybridState& state, const MeasurementWindow& window) {
    const std::size_t n = state.points();

    // Ancilla slices v_c over (j, b). Purity of the reduced CV x Bob state:
    // Tr(rho^2) with rho = |v0><v0| + |v1><v1|.
    std::vector<cplx> v0(n * 2), v1(n * 2);
    for (std::size_t j = 0; j < n; ++j) {
        for (int b = 0; b < 2; ++b) {
            v0[j * 2 + static_cast<std::size_t>(b)] = state.amplitude(j, 0, b);
            v1[j * 2 + static_cast<std::size_t>(b)] = state.amplitude(j, 1, b);
        }
    }
    double n0 = 0.0, n1 = 0.0;
    cplx cross{0.0, 0.0};
    for (std::size_t i = 0; i < v0.size(); ++i) {
        n0 += std::norm(v0[i]);
        n1 += std::norm(v1[i]);
        cross += std::conj(v0[i]) * v1[i];
    }
    const double purity = n0 * n0 + n1 * n1 + 2.0 * std::norm(cross);

    // Discarding the ancilla leaves the mixture {v0, v1}; uncomputing it
    // leaves the coherent sum v0 + v1 (the semiclassical state, since each
    // grid branch populates exactly one ancilla value).
    std::vector<cplx> coherent(n * 2);
    for (std::size_t i = 0; i < coherent.size(); ++i) coherent[i] = v0[i] + v1[i];

    const double p_mixture = window_probability_cvbob(state.grid_ptr(), v0, window) +
                             window_probability_cvbob(state.grid_ptr(), v1, window);
    const double p_coherent = window_probability_cvbob(state.grid_ptr(), coherent, window);

    return DiscardReport{purity, p_mixture - p_coherent};
}

double bob_fidelity_with(const HybridState& state, const DualRailState& target) {
    // rho_b[b][b'] = sum_{j,c} A[j,c,b] conj(A[j,c,b'])
    cplx rho[2][2] = {{{0.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}}};
    for (std::size_t j = 0; j < state.points(); ++j) {
        for (int c = 0; c < 2; ++c) {
            for (int b = 0; b < 2; ++b) {
                for (int bp = 0; bp < 2; ++bp) {
                    rho[b][bp] += state.amplitude(j, c, b) * std::conj(state.amplitude(j, c, bp));
                }
            }
        }
    }
    const cplx t[2] = {target.a0, target.a1};
    cplx fid{0.0, 0.0};
    for (int b = 0; b < 2; ++b) {
        for (int bp = 0; bp < 2; ++bp) {
            fid += std::conj(t[b]) * rho[b][bp] * t[bp];
        }
    }
    return fid.real();
}

double product_fidelity(const HybridState& state, const CvState& cv, int ancilla_bit,
                        const DualRailState& bob) {
    const cplx tb[2] = {bob.a0, bob.a1};
    cplx ov{0.0, 0.0};
    for (std::size_t j = 0; j < state.points(); ++j) {
        for (int b = 0; b < 2; ++b) {
            ov += std::conj(cv.amplitude(j) * tb[b]) * state.amplitude(j, ancilla_bit, b);
        }
    }
    return std::norm(ov);
}

CvState cv_conditioned(const HybridState& state, int ancilla_bit, const DualRailState& bob) {
    const cplx tb[2] = {bob.a0, bob.a1};
    std::vector<cplx> amps(state.points());
    for (std::size_t j = 0; j < state.points(); ++j) {
        amps[j] = std::conj(tb[0]) * state.amplitude(j, ancilla_bit, 0) +
                  std::conj(tb[1]) * state.amplitude(j, ancilla_bit, 1);
    }
    return CvState(state.grid_ptr(), std::move(amps));
}

double reduced_cv_purity(const HybridState& state) {
    // rho_cv = sum_{cb} |u_cb><u_cb| with u_cb[j] = A[j,c,b];
    // Tr(rho^2) = sum |<u|u'>|^2 over the 4x4 slice pairs.
    const std::size_t n = state.points();
    double purity = 0.0;
    for (int s1 = 0; s1 < 4; ++s1) {
        for (int s2 = 0; s2 < 4; ++s2) {
            cplx ip{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                ip += std::conj(state.amplitude(j, s1 / 2, s1 % 2)) *
                      state.amplitude(j, s2 / 2, s2 % 2);
            }
            purity += std::norm(ip);
        }
    }
    return purity;
}

}  // namespace hdj
