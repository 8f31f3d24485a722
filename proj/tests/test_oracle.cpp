#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "hdj/measurement.hpp"
#include "hdj/oracle.hpp"
#include "test_helpers.hpp"

using namespace hdj;
using namespace hdj_test;

namespace {

constexpr double kPi = std::numbers::pi;

DualRailState bob_kickback() { return beam_splitter(make_dualrail(1), kPi / 4.0); }

// Independent by-hand application of the two controlled permutations,
// index by index on a raw copy of the tensor.
std::vector<cplx> oracle_by_hand(const HybridState& state, const OracleSpec& f) {
    const std::size_t n = state.points();
    std::vector<cplx> out(n * 4);
    for (std::size_t j = 0; j < n; ++j) {
        for (int c = 0; c < 2; ++c) {
            for (int b = 0; b < 2; ++b) {
                // step 1: c' = c xor f_j; step 2: b' = b xor c'
                const int cp = c ^ static_cast<int>(f.values()[j]);
                const int bp = b ^ cp;
                out[j * 4 + static_cast<std::size_t>(cp) * 2 + static_cast<std::size_t>(bp)] =
                    state.amplitude(j, c, b);
            }
        }
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("promise validation: constant, balanced, violations") {
    const GridPtr g = make_grid(64);
    CHECK(validate_promise(make_function(FunctionKind::const0, *g)) == PromiseClass::constant);
    CHECK(validate_promise(make_function(FunctionKind::step, *g)) == PromiseClass::balanced);

    std::vector<std::uint8_t> three(64, 0);
    three[3] = three[17] = three[40] = 1;
    const OracleSpec bad(three, PromiseClass::balanced, "three-ones");
    CHECK_THROWS_WITH_AS(validate_promise(bad),
                         doctest::Contains("3 ones out of 64"), std::invalid_argument);

    std::vector<std::uint8_t> ones(64, 1);
    const OracleSpec mislabeled(ones, PromiseClass::balanced, "mislabeled");
    CHECK_THROWS_AS(validate_promise(mislabeled), std::invalid_argument);
}

TEST_CASE("promise validation: every odd bit-flip of a balanced spec is rejected") {
    const GridPtr g = make_grid(64);
    const OracleSpec base = make_function(FunctionKind::random_balanced, *g, 0, 99);
    std::mt19937_64 rng(100);
    for (int rep = 0; rep < 10; ++rep) {
        auto bits = base.values();
        const int flips = 1 + 2 * static_cast<int>(rng() % 4);  // odd flip count
        for (int i = 0; i < flips; ++i) {
            const std::size_t pos = rng() % bits.size();
            bits[pos] ^= 1;
        }
        const OracleSpec mutated(bits, PromiseClass::balanced, "mutated");
        CHECK_THROWS_AS(validate_promise(mutated), std::invalid_argument);
    }
}

TEST_CASE("function corpus: counts, determinism, width checks") {
    const GridPtr g = make_grid(64);
    CHECK(make_function(FunctionKind::const1, *g).ones() == 64);
    CHECK(make_function(FunctionKind::step, *g).ones() == 32);
    CHECK(make_function(FunctionKind::parity_bins, *g, 8).ones() == 32);

    const OracleSpec r1 = make_function(FunctionKind::random_balanced, *g, 0, 7);
    const OracleSpec r2 = make_function(FunctionKind::random_balanced, *g, 0, 7);
    CHECK(r1.values() == r2.values());
    const OracleSpec r3 = make_function(FunctionKind::random_balanced, *g, 0, 8);
    CHECK(r1.values() != r3.values());

    CHECK_THROWS_AS(make_function(FunctionKind::parity_bins, *g, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_function(FunctionKind::parity_bins, *g, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_function(FunctionKind::parity_bins, *g, 64), std::invalid_argument);

    for (FunctionKind kind : {FunctionKind::const0, FunctionKind::const1, FunctionKind::step,
                              FunctionKind::parity_bins, FunctionKind::random_balanced}) {
        CHECK_NOTHROW(validate_promise(make_function(kind, *g, 8, 5)));
    }
}

TEST_CASE("oracle spec: JSON serialization shape") {
    const GridPtr g = make_grid(8);
    const std::string json = to_json(make_function(FunctionKind::step, *g));
    CHECK(json == "{\"label\": \"step\", \"declared_class\": \"balanced\", "
                  "\"values\": \"00001111\"}");
}

TEST_CASE("semiclassical oracle: net phase on the qunat, Bob untouched") {
    const GridPtr g = make_grid(64);
    std::mt19937_64 rng(31);
    const CvState cv = random_normalized_state(g, rng);
    const DualRailState bob = bob_kickback();

    const auto [cv0, bob0] = apply_oracle_semiclassical(cv, bob, make_function(FunctionKind::const0, *g));
    for (std::size_t j = 0; j < g->size(); ++j) CHECK(cv0.amplitude(j) == cv.amplitude(j));
    CHECK(fidelity(bob0, bob) == doctest::Approx(1.0).epsilon(1e-12));

    const auto [cv1, bob1] = apply_oracle_semiclassical(cv, bob, make_function(FunctionKind::const1, *g));
    for (std::size_t j = 0; j < g->size(); ++j) CHECK(cv1.amplitude(j) == -cv.amplitude(j));
    CHECK(fidelity(bob1, bob) == doctest::Approx(1.0).epsilon(1e-12));

    const OracleSpec step = make_function(FunctionKind::step, *g);
    const auto [cvs, bobs] = apply_oracle_semiclassical(cv, bob, step);
    const CvState expected = apply_phase_function(cv, step.values());
    for (std::size_t j = 0; j < g->size(); ++j) CHECK(cvs.amplitude(j) == expected.amplitude(j));

    CHECK_THROWS_WITH_AS(apply_oracle_semiclassical(cv, make_dualrail(1), step),
                         doctest::Contains("(|0> - |1>)/sqrt(2)"), std::invalid_argument);
}

TEST_CASE("coherent oracle: matches the by-hand permutation on an 8-point grid") {
    const GridPtr g = make_grid(8);
    std::mt19937_64 rng(32);
    const CvState cv = random_normalized_state(g, rng);
    const HybridState joint = HybridState::product(cv, make_dualrail(0), bob_kickback());
    CHECK(std::abs(joint.norm() - 1.0) <= 1e-10);
    for (FunctionKind kind : {FunctionKind::const0, FunctionKind::const1, FunctionKind::step,
                              FunctionKind::parity_bins, FunctionKind::random_balanced}) {
        const OracleSpec f = make_function(kind, *g, 1, 3);
        const HybridState out = apply_oracle_coherent(joint, f);
        const std::vector<cplx> expected = oracle_by_hand(joint, f);
        CHECK(max_abs_diff(out.amplitudes(), expected) == 0.0);
        CHECK(std::abs(out.norm() - 1.0) <= 1e-10);
        // reduced Bob density matrix stays trace one
        CHECK(bob_fidelity_with(out, make_dualrail(0)) +
                  bob_fidelity_with(out, make_dualrail(1)) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("coherent oracle: const0 returns the input, const1 flips and marks the ancilla") {
    const GridPtr g = make_grid(64);
    std::mt19937_64 rng(33);
    const CvState cv = random_normalized_state(g, rng);
    const DualRailState bob = bob_kickback();
    const HybridState joint = HybridState::product(cv, make_dualrail(0), bob);

    const HybridState same = apply_oracle_coherent(joint, make_function(FunctionKind::const0, *g));
    CHECK(max_abs_diff(same.amplitudes(), joint.amplitudes()) == 0.0);

    const HybridState marked =
        apply_oracle_coherent(joint, make_function(FunctionKind::const1, *g));
    CHECK(marked.ancilla_population(0) <= 1e-24);
    CHECK(marked.ancilla_population(1) == doctest::Approx(1.0).epsilon(1e-12));
    // separable: global -1 on the CV register, ancilla |1>, Bob unchanged
    const CvState negated = apply_phase_function(cv, std::vector<std::uint8_t>(g->size(), 1));
    CHECK(product_fidelity(marked, negated, 1, bob) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent oracle: requires a cleared ancilla") {
    const GridPtr g = make_grid(8);
    std::mt19937_64 rng(34);
    const CvState cv = random_normalized_state(g, rng);
    const HybridState dirty = HybridState::product(cv, make_dualrail(1), bob_kickback());
    CHECK_THROWS_WITH_AS(apply_oracle_coherent(dirty, make_function(FunctionKind::const0, *g)),
                         doctest::Contains("ancilla not cleared"), std::invalid_argument);
}

TEST_CASE("coherent oracle: balanced functions entangle the ancilla with the CV register") {
    const GridPtr g = make_grid(8);
    const CvState flat =
        fourier(position_eigenstate(g, 0.0), FourierDirection::forward);
    const HybridState joint = HybridState::product(flat, make_dualrail(0), bob_kickback());
    const HybridState out = apply_oracle_coherent(joint, make_function(FunctionKind::step, *g));
    CHECK(reduced_cv_purity(out) < 1.0 - 1e-6);
    CHECK(reduced_cv_purity(joint) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uncompute: restores the ancilla and the semiclassical state") {
    for (std::size_t n : {8u, 64u, 256u}) {
        const GridPtr g = make_grid(n);
        std::mt19937_64 rng(35);
        const CvState cv = random_normalized_state(g, rng);
        const DualRailState bob = bob_kickback();
        for (FunctionKind kind : {FunctionKind::const0, FunctionKind::const1, FunctionKind::step,
                                  FunctionKind::parity_bins, FunctionKind::random_balanced}) {
            const OracleSpec f = make_function(kind, *g, n / 8, 17);
            const HybridState joint = HybridState::product(cv, make_dualrail(0), bob);
            const HybridState uncomputed =
                uncompute_ancilla(apply_oracle_coherent(joint, f), f);
            CHECK(uncomputed.ancilla_population(1) == 0.0);

            const auto [cv_semi, bob_semi] = apply_oracle_semiclassical(cv, bob, f);
            CHECK(product_fidelity(uncomputed, cv_semi, 0, bob_semi) >= 1.0 - 1e-10);
            CHECK(bob_fidelity_with(uncomputed, bob) >= 1.0 - 1e-10);
        }
    }
}

TEST_CASE("uncompute: const0 is the exact identity") {
    const GridPtr g = make_grid(8);
    std::mt19937_64 rng(36);
    const CvState cv = random_normalized_state(g, rng);
    const HybridState joint = HybridState::product(cv, make_dualrail(0), bob_kickback());
    const OracleSpec f = make_function(FunctionKind::const0, *g);
    const HybridState back = uncompute_ancilla(apply_oracle_coherent(joint, f), f);
    CHECK(max_abs_diff(back.amplitudes(), joint.amplitudes()) == 0.0);
}

TEST_CASE("uncompute: wrong f leaves residual ancilla population") {
    const GridPtr g = make_grid(64);
    std::mt19937_64 rng(37);
    const CvState cv = random_normalized_state(g, rng);
    const HybridState joint = HybridState::product(cv, make_dualrail(0), bob_kickback());
    const HybridState entangled =
        apply_oracle_coherent(joint, make_function(FunctionKind::step, *g));
    CHECK_THROWS_WITH_AS(
        uncompute_ancilla(entangled, make_function(FunctionKind::parity_bins, *g, 8)),
        doctest::Contains("residual ancilla population"), std::invalid_argument);
}

TEST_CASE("discard study: constant f is separable, balanced step is a half-half mixture") {
    const GridPtr g = make_grid(8);
    const CvState flat = fourier(position_eigenstate(g, 0.0), FourierDirection::forward);
    const HybridState joint = HybridState::product(flat, make_dualrail(0), bob_kickback());
    const MeasurementWindow window{g->point(g->nearest_index(0.0)), g->spacing(),
                                   WindowBasis::position, 64};

    const DiscardReport const_report = ancilla_discard_study(
        apply_oracle_coherent(joint, make_function(FunctionKind::const1, *g)), window);
    CHECK(const_report.cv_purity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(const_report.window_prob_shift) <= 1e-12);

    const DiscardReport step_report = ancilla_discard_study(
        apply_oracle_coherent(joint, make_function(FunctionKind::step, *g)), window);
    // two equal-weight orthogonal ancilla branches
    CHECK(step_report.cv_purity == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("discard study: destroying the interference raises the window probability") {
    const GridPtr g = make_grid(64);
    const CvState flat = fourier(position_eigenstate(g, 0.0), FourierDirection::forward);
    const HybridState joint = HybridState::product(flat, make_dualrail(0), bob_kickback());
    const HybridState out = apply_oracle_coherent(joint, make_function(FunctionKind::step, *g));
    const MeasurementWindow window{g->point(g->nearest_index(0.0)), g->spacing(),
                                   WindowBasis::position, 64};
    const DiscardReport report = ancilla_discard_study(out, window);
    CHECK(report.window_prob_shift > 0.0);
    // coherent path cancels exactly, the mixture puts 1/4 + 1/4 at the snapped point
    CHECK(report.window_prob_shift == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_SUITE_END();
