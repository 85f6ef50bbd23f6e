#pragma once

#include <cmath>
#include <vector>

namespace rswap {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Newton iteration on the three-term Legendre recurrence.
    static GaussLegendreRule make(int order);

    /// Integral of f over [a, b].
    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
        return half * sum;
    }
};

}  // namespace rswap
