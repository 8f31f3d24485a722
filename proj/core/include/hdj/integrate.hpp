#pragma once

#include <functional>

namespace hdj {

/// Adaptive Simpson quadrature by interval bisection: splits until the local
/// Richardson error estimate meets the (proportionally allotted) absolute
/// tolerance. Throws NumericalError with the achieved estimate when the depth
/// limit is hit first.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

}  // namespace hdj
