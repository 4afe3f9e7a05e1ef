#pragma once

#include <cmath>
#include <utility>

#include "spiraldim/errors.hpp"

namespace spiraldim {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 60;
};

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(F& f, double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) {
        return left + right + err / 15.0;
    }
    if (depth <= 0) {
        throw numeric_error("adaptive quadrature did not converge within the depth cap");
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson integration of f over [a, b] to an absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, QuadratureOptions opt = {}) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = detail::simpson(a, fa, b, fb, fm);
    return detail::adapt(f, a, fa, b, fb, m, fm, whole, opt.abs_tol, opt.max_depth);
}

}  // namespace spiraldim
