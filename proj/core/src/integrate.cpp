#include "hdj/integrate.hpp"

#include <cmath>
#include <string>

#include "hdj/errors.hpp"

namespace hdj {

namespace {

struct Panel {
    double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
               int max_depth) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double err = (left + right - p.whole) / 15.0;
    if (std::abs(err) <= tol || (p.b - p.a) < 1e-300) {
        return left + right + err;  // Richardson extrapolation
    }
    if (depth >= max_depth) {
        throw NumericalError("integrate_adaptive: depth limit reached, achieved error " +
                             std::to_string(std::abs(err)) + " > tolerance " +
                             std::to_string(tol));
    }
    return recurse(f, Panel{p.a, m, p.fa, flm, p.fm, left}, tol / 2.0, depth + 1, max_depth) +
           recurse(f, Panel{m, p.b, p.fm, frm, p.fb, right}, tol / 2.0, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(a, b, fa, fm, fb);
    return recurse(f, Panel{a, b, fa, fm, fb, whole}, abs_tol, 0, max_depth);
}

}  // namespace hdj
