#pragma once

#include <string>
#include <vector>

#include "hdj/quadrature.hpp"

namespace hdj {

/// Post-measurement amplitude profile over the grid: the erf closed form next
/// to the independent quadrature of the full t-integral.
struct ErrProfile {
    std::vector<double> q_values;
    std::vector<double> exact;        // (1/pi) * full t-integral, adaptive quadrature
    std::vector<double> closed_form;  // (4*pi)^(-1/2) * Gamma_err
    GaussianParams params;
};

/// Gamma_err(q, s) = (1/q) [erf(q/(s - ds/2)) - erf(q/(s + ds/2))].
///
/// Even in q; below |q| = 1e-8 the analytic q -> 0 limit
/// (2/sqrt(pi)) (1/(s - ds/2) - 1/(s + ds/2)) is returned so the 1/q
/// prefactor never divides by a vanishing argument. Requires s - ds/2 > 0.
double gamma_err(double q, const GaussianParams& params);

enum class IntegrandMode {
    approximated,  // dt/t^2 exp(-q^2/t^2): the high-squeezing form
    full           // dt/t^2 (1 + s^2/t^2)^(-1/2) exp(-q^2/t^2)
};

/// Adaptive quadrature of the squeezed-window t-integral over
/// [s - ds/2, s + ds/2] to absolute tolerance 1e-12. The approximated mode is
/// the standing oracle for the Gamma_err closed form; the full mode keeps the
/// (1 + s^2/t^2)^(-1/2) factor the closed form drops.
double exact_t_integral(double q, const GaussianParams& params, IntegrandMode mode);

/// Ratio of full to approximated integral at q; quantifies the high-squeezing
/// approximation instead of assuming it.
double approximation_gap(double q, const GaussianParams& params);

/// closed_form_j = (4*pi)^(-1/2) Gamma_err(q_j); exact_j = (1/pi) * full
/// t-integral at q_j. The grid must resolve the scale 1/(s + ds/2).
ErrProfile post_measurement_profile(const QuadratureGrid& grid, const GaussianParams& params);

/// CSV with header q,exact,closed_form,abs_gap; LF line endings.
std::string to_csv(const ErrProfile& profile);

/// |<s|S>|^2 for constant f: builds |s> per convention, runs the pipeline
/// fourier -> constant phase -> inverse fourier to obtain |S>, and returns the
/// squared overlap. Under the normalized convention this is ~1 for the even
/// Gaussian; under the paper convention the non-unit prefactor makes it
/// ~1/(2*pi). The caller records which convention produced the number.
double constant_success_probability(const GaussianParams& params, const GridPtr& grid,
                                    Convention convention);

/// r = ln(s); throws for s <= 0.
double squeezing_parameter(double s);

}  // namespace hdj
