#include "hdj/gaussian_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hdj/format.hpp"
#include "hdj/integrate.hpp"

namespace hdj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQLimitBranch = 1e-8;
constexpr double kQuadTol = 1e-12;

void require_positive_window(const GaussianParams& p, const char* who) {
    if (!(p.window_low() > 0.0)) {
        throw std::invalid_argument(std::string(who) +
                                    ": requires s - delta_s/2 > 0 (erf arguments must be finite)");
    }
}

}  // namespace

double gamma_err(double q, const GaussianParams& params) {
    require_positive_window(params, "gamma_err");
    const double a = params.window_low();
    const double b = params.window_high();
    if (std::abs(q) < kQLimitBranch) {
        return (2.0 / std::sqrt(kPi)) * (1.0 / a - 1.0 / b);
    }
    return (std::erf(q / a) - std::erf(q / b)) / q;
}

double exact_t_integral(double q, const GaussianParams& params, IntegrandMode mode) {
    require_positive_window(params, "exact_t_integral");
    const double s = params.s;
    const double q2 = q * q;
    std::function<double(double)> integrand;
    if (mode == IntegrandMode::approximated) {
        integrand = [q2](double t) { return std::exp(-q2 / (t * t)) / (t * t); };
    } else {
        integrand = [q2, s](double t) {
            return std::exp(-q2 / (t * t)) / (t * t) / std::sqrt(1.0 + s * s / (t * t));
        };
    }
    return integrate_adaptive(integrand, params.window_low(), params.window_high(), kQuadTol);
}

double approximation_gap(double q, const GaussianParams& params) {
    const double approx = exact_t_integral(q, params, IntegrandMode::approximated);
    const double full = exact_t_integral(q, params, IntegrandMode::full);
    return full / approx;
}

ErrProfile post_measurement_profile(const QuadratureGrid& grid, const GaussianParams& params) {
    require_positive_window(params, "post_measurement_profile");
    const double scale = 1.0 / params.window_high();
    if (grid.spacing() > scale / 4.0) {
        throw std::invalid_argument(
            "post_measurement_profile: grid does not resolve 1/(s + delta_s/2)");
    }
    ErrProfile profile{{}, {}, {}, params};
    profile.q_values.reserve(grid.size());
    profile.exact.reserve(grid.size());
    profile.closed_form.reserve(grid.size());
    const double prefactor = 1.0 / std::sqrt(4.0 * kPi);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double q = grid.point(j);
        profile.q_values.push_back(q);
        profile.exact.push_back(exact_t_integral(q, params, IntegrandMode::full) / kPi);
        profile.closed_form.push_back(prefactor * gamma_err(q, params));
    }
    return profile;
}

std::string to_csv(const ErrProfile& profile) {
    std::string out = "q,exact,closed_form,abs_gap\n";
    for (std::size_t j = 0; j < profile.q_values.size(); ++j) {
        out += format_sci(profile.q_values[j]);
        out += ',';
        out += format_sci(profile.exact[j]);
        out += ',';
        out += format_sci(profile.closed_form[j]);
        out += ',';
        out += format_sci(std::abs(profile.exact[j] - profile.closed_form[j]));
        out += '\n';
    }
    return out;
}

double constant_success_probability(const GaussianParams& params, const GridPtr& grid,
                                    Convention convention) {
    const double s = params.s;
    const double inv_s = 1.0 / s;
    const bool resolves = grid->spacing() <= std::min(s, inv_s) / 4.0 &&
                          grid->half_width() >= 5.0 * std::max(s, inv_s);
    if (!resolves) {
        throw std::invalid_argument(
            "constant_success_probability: grid must resolve both s and 1/s");
    }
    const CvState initial = build_squeezed_state(grid, params, convention);
    const CvState superposed = fourier(initial, FourierDirection::forward);
    // a constant f contributes at most a global sign, which |<s|S>|^2 drops
    const CvState final_state = fourier(superposed, FourierDirection::inverse);
    return std::norm(overlap(initial, final_state));
}

double squeezing_parameter(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("squeezing_parameter: s must be > 0");
    return std::log(s);
}

}  // namespace hdj
