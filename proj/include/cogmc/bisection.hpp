#pragma once

// Sign-change bisection shared by the power and rate solvers. All roots in
// this library separate a positive left side from a negative right side.

#include <cmath>
#include <string>

#include "cogmc/model.hpp"

namespace cogmc {

struct BisectionResult {
    double root = 0.0;
    double lo = 0.0;   // f(lo) > 0
    double hi = 0.0;   // f(hi) <= 0
    int iterations = 0;
};

inline constexpr int kMaxDoublings = 200;

/// Doubles `start` until f turns negative. Throws NumericalError after
/// kMaxDoublings attempts.
template <typename F>
double expand_upper(F&& f, double start, const char* what)
{
    double hi = start;
    for (int i = 0; i <= kMaxDoublings; ++i) {
        if (f(hi) < 0.0) return hi;
        hi *= 2.0;
    }
    throw NumericalError(std::string("bracket expansion failed for ") + what);
}

/// Requires f(lo) > 0 >= f(hi). Stops once the bracket is narrower than
/// x_tol and the midpoint residual is within f_tol, or when the bracket can
/// no longer be split in double precision.
template <typename F>
BisectionResult bisect(F&& f, double lo, double hi, double x_tol, double f_tol)
{
    BisectionResult r{0.5 * (lo + hi), lo, hi, 0};
    for (;;) {
        const double mid = r.lo + 0.5 * (r.hi - r.lo);
        if (mid <= r.lo || mid >= r.hi) break;
        const double fm = f(mid);
        ++r.iterations;
        r.root = mid;
        if (fm == 0.0) {
            r.lo = r.hi = mid;
            break;
        }
        if (fm > 0.0)
            r.lo = mid;
        else
            r.hi = mid;
        if (r.hi - r.lo <= x_tol && std::abs(fm) <= f_tol) break;
    }
    return r;
}

}  // namespace cogmc
