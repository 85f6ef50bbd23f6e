#pragma once

#include <cmath>
#include <utility>

namespace rswap {

struct BracketSettings {
    double residual_tolerance = 1e-12;
    double width_tolerance = 1e-14;
    int max_iterations = 200;
};

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Safeguarded secant on a sign-changing bracket [lo, hi].
///
/// Requires f(lo) and f(hi) of opposite sign (or one of them zero). Each
/// step takes the secant through the two latest iterates when it lands
/// strictly inside the current bracket and the bracket has been at least
/// halved over the last two steps; otherwise it bisects.
template <typename F>
RootResult solve_bracketed(F&& f, double lo, double hi, double f_lo, double f_hi,
                           const BracketSettings& settings = {}) {
    RootResult best{lo, f_lo, 0, false};
    if (std::abs(f_hi) < std::abs(f_lo)) best = {hi, f_hi, 0, false};
    if (f_lo == 0.0 || f_hi == 0.0) {
        best.converged = true;
        return best;
    }

    double a = lo, fa = f_lo;  // f(a) and f(b) have opposite signs
    double b = hi;
    double prev = a, f_prev = fa;
    double cur = b, f_cur = f_hi;
    double width_two_steps_ago = 2.0 * (b - a);
    double width_one_step_ago = 2.0 * (b - a);

    for (int it = 1; it <= settings.max_iterations; ++it) {
        double x = 0.5 * (a + b);
        const bool shrinking = (b - a) <= 0.5 * width_two_steps_ago;
        if (shrinking && f_cur != f_prev) {
            const double s = cur - f_cur * (cur - prev) / (f_cur - f_prev);
            if (s > a && s < b) x = s;
        }
        const double fx = f(x);
        best.iterations = it;
        if (std::abs(fx) < std::abs(best.residual)) {
            best.x = x;
            best.residual = fx;
        }
        if (fx == 0.0) {
            best.converged = true;
            return best;
        }
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        prev = cur;
        f_prev = f_cur;
        cur = x;
        f_cur = fx;
        width_two_steps_ago = width_one_step_ago;
        width_one_step_ago = b - a;

        if (std::abs(fx) < settings.residual_tolerance || (b - a) < settings.width_tolerance) {
            best.converged = true;
            return best;
        }
    }
    return best;
}

}  // namespace rswap
