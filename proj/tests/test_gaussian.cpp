#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "hdj/errors.hpp"
#include "hdj/gaussian_analysis.hpp"
#include "hdj/integrate.hpp"
#include "test_helpers.hpp"

using namespace hdj;
using namespace hdj_test;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("gaussian");

TEST_CASE("gamma_err: even in q") {
    const GaussianParams p(1.0, 0.2);
    for (double q : {0.3, 1.7}) {
        CHECK(gamma_err(q, p) == doctest::Approx(gamma_err(-q, p)).epsilon(1e-14));
    }
}

TEST_CASE("gamma_err: q -> 0 analytic limit") {
    const GaussianParams p(1.0, 0.2);
    // frozen from an arbitrary-precision evaluation of (2/sqrt(pi)) (1/0.9 - 1/1.1)
    CHECK(gamma_err(0.0, p) == doctest::Approx(0.22795538729202274).epsilon(1e-12));
    // continuity across the branch at |q| = 1e-8
    CHECK(std::abs(gamma_err(1e-6, p) - gamma_err(0.0, p)) <= 1e-6);
    CHECK(std::abs(gamma_err(1e-9, p) - gamma_err(0.0, p)) <= 1e-9);

    // independent route: (2/sqrt(pi)) * quadrature of dt/t^2 e^{-q^2/t^2} at q = 1e-4
    const double integral = exact_t_integral(1e-4, p, IntegrandMode::approximated);
    CHECK(std::abs((2.0 / std::sqrt(kPi)) * integral - gamma_err(0.0, p)) <= 1e-6);
}

TEST_CASE("gamma_err: vanishing window and invalid parameters") {
    const GaussianParams degenerate(0.7, 0.0);
    for (double q : {0.0, 0.5, 2.0}) CHECK(gamma_err(q, degenerate) == 0.0);

    CHECK_THROWS_AS(gamma_err(1.0, GaussianParams(0.1, 0.3)), std::invalid_argument);
}

TEST_CASE("t-integral: approximated mode equals the erf closed form") {
    const GaussianParams p(0.3, 0.05);
    const double q = 0.5;
    const double integral = exact_t_integral(q, p, IntegrandMode::approximated);
    // u = 1/t reduces the integral to (sqrt(pi)/2) Gamma_err
    const double closed = std::sqrt(kPi) / 2.0 * gamma_err(q, p);
    CHECK(std::abs(integral - closed) / closed <= 1e-8);
    // frozen from an arbitrary-precision quadrature
    CHECK(integral == doctest::Approx(0.034465163718219).epsilon(1e-9));
}

TEST_CASE("t-integral: independent fixed-step Simpson route") {
    const GaussianParams p(0.4, 0.1);
    for (double q : {0.0, 0.3, 1.1}) {
        const double adaptive = exact_t_integral(q, p, IntegrandMode::full);
        const double fixed = simpson_fixed(
            [&](double t) {
                return std::exp(-q * q / (t * t)) / (t * t) /
                       std::sqrt(1.0 + p.s * p.s / (t * t));
            },
            p.window_low(), p.window_high(), 2048);
        CHECK(adaptive == doctest::Approx(fixed).epsilon(1e-10));
    }
}

TEST_CASE("t-integral: the high-squeezing approximation gap is measured, not assumed") {
    // s^2/t^2 ~ 1 on the window, so the dropped factor is far from 1
    const GaussianParams p(0.3, 0.05);
    const double ratio = approximation_gap(0.5, p);
    CHECK(ratio == doctest::Approx(0.70938697494).epsilon(1e-6));
    CHECK(ratio < 0.9);  // the gap is order one

    // both modes finite and positive at q = 0
    CHECK(exact_t_integral(0.0, p, IntegrandMode::approximated) > 0.0);
    CHECK(exact_t_integral(0.0, p, IntegrandMode::full) > 0.0);
}

TEST_CASE("closed form vs quadrature: 50 random parameter triples") {
    std::mt19937_64 rng(51);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int rep = 0; rep < 50; ++rep) {
        const double s = 0.2 + 0.8 * uniform();
        const double delta_s = s * (0.2 + 0.6 * uniform());
        const double q = (0.02 + 0.98 * uniform()) * 2.5 * s;
        const GaussianParams p(s, delta_s);
        REQUIRE(p.window_low() > 0.01);
        const double closed = gamma_err(q, p);
        const double quad =
            (2.0 / std::sqrt(kPi)) * exact_t_integral(q, p, IntegrandMode::approximated);
        CHECK(std::abs(closed - quad) / std::abs(quad) <= 1e-8);
    }
}

TEST_CASE("profile: closed form is the exact antiderivative of the approximated integrand") {
    const GridPtr g = make_grid(64);
    const GaussianParams p(0.2, 0.02);
    const ErrProfile profile = post_measurement_profile(*g, p);
    double worst = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j) {
        const double via_quad =
            exact_t_integral(profile.q_values[j], p, IntegrandMode::approximated) / kPi;
        worst = std::max(worst, std::abs(profile.closed_form[j] - via_quad));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("profile: even in q with the peak at the center") {
    const GridPtr g = make_grid(64);
    const GaussianParams p(0.2, 0.02);
    const ErrProfile profile = post_measurement_profile(*g, p);
    const std::size_t n = g->size();
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(profile.closed_form[j] - profile.closed_form[n - 1 - j]) <= 1e-10);
        CHECK(std::abs(profile.exact[j] - profile.exact[n - 1 - j]) <= 1e-10);
        CHECK(std::isfinite(profile.exact[j]));
    }
    std::size_t argmax = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (profile.closed_form[j] > profile.closed_form[argmax]) argmax = j;
    }
    CHECK(std::abs(profile.q_values[argmax]) <= g->spacing());  // one of the two central points
}

TEST_CASE("profile: CSV serialization shape") {
    const GridPtr g = make_grid(64);
    const ErrProfile profile = post_measurement_profile(*g, GaussianParams(0.2, 0.02));
    const std::string csv = to_csv(profile);
    CHECK(csv.substr(0, 29) == "q,exact,closed_form,abs_gap\n-");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);  // header + 64 rows
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("profile: resolution guard") {
    const GridPtr g = make_grid(8);  // spacing 0.63
    CHECK_THROWS_AS(post_measurement_profile(*g, GaussianParams(0.9, 0.2)),
                    std::invalid_argument);
}

TEST_CASE("success probability: normalized convention returns ~1 for even Gaussians") {
    const GridPtr g = make_grid(256);
    CHECK(constant_success_probability(GaussianParams(1.0, 0.1), g, Convention::normalized) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(constant_success_probability(GaussianParams(0.5, 0.1), g, Convention::normalized) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("success probability: paper convention is recorded, not asserted against 1/2") {
    const GridPtr g = make_grid(256);
    const double p = constant_success_probability(GaussianParams(0.5, 0.1), g, Convention::paper);
    // the non-unit prefactor squares to 1/sqrt(2 pi), so the pipeline returns
    // (1/sqrt(2 pi))^2; the 1/2 comparison value is documented in run records
    CHECK(p == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-6));
    CHECK(p > 0.0);
    CHECK(p < 1.0);
}

TEST_CASE("success probability: resolution guard for s and 1/s") {
    CHECK_THROWS_AS(
        constant_success_probability(GaussianParams(0.2, 0.02), make_grid(64),
                                     Convention::normalized),
        std::invalid_argument);
}

TEST_CASE("squeezing conversions") {
    CHECK(squeezing_parameter(1.0) == 0.0);
    CHECK(squeezing_parameter(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    for (double s : {0.1, 0.5, 2.0}) {
        CHECK(std::exp(squeezing_parameter(s)) == doctest::Approx(s).epsilon(1e-15));
        CHECK(GaussianParams(s).r() == squeezing_parameter(s));
    }
    CHECK_THROWS_AS(squeezing_parameter(0.0), std::invalid_argument);
    CHECK_THROWS_AS(squeezing_parameter(-2.0), std::invalid_argument);
}

TEST_CASE("gamma_err: monotonically increasing in delta_s on a 10x10 lattice") {
    const double q = 0.7;
    for (int i = 0; i < 10; ++i) {
        const double s = 0.2 + 0.1 * i;
        double previous = 0.0;
        for (int k = 1; k <= 10; ++k) {
            const double delta_s = 0.15 * s * k / 10.0;
            const double value = gamma_err(q, GaussianParams(s, delta_s));
            CHECK(value > previous);
            previous = value;
        }
    }
}

TEST_CASE("adaptive integrator: polynomial exactness and failure reporting") {
    // Simpson integrates cubics exactly
    const double cubic = integrate_adaptive([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
    CHECK(cubic == doctest::Approx(4.0).epsilon(1e-13));

    const double gaussian =
        integrate_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-12);
    CHECK(gaussian == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));

    // a depth limit of 2 cannot resolve a narrow spike to 1e-12
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::exp(-x * x * 1e6); }, -1.0, 1.0,
                                       1e-12, 2),
                    NumericalError);
}

TEST_SUITE_END();
