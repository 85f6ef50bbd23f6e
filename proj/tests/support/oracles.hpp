#pragma once

// Test-only reference computations. Nothing here calls the closed-form
// integration path; curves are only sampled pointwise.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "rswap/curves.hpp"

namespace rswap::testing {

/// Trapezoid rule with step halving until two successive estimates agree
/// to `tol`, applied on each panel separately.
template <typename F>
double adaptive_trapezoid(F&& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    int n = 1;
    double h = b - a;
    double estimate = 0.5 * h * (f(a) + f(b));
    for (int level = 0; level < 30; ++level) {
        double mid_sum = 0.0;
        for (int i = 0; i < n; ++i) mid_sum += f(a + (i + 0.5) * h);
        const double refined = 0.5 * estimate + 0.5 * h * mid_sum;
        n *= 2;
        h *= 0.5;
        if (level > 2 && std::abs(refined - estimate) < tol) return refined;
        estimate = refined;
    }
    return estimate;
}

/// Panel edges: every pillar and segment end inside (0, T), plus 0 and T.
inline std::vector<double> oracle_panels(const DiscountCurve& dc, const HazardCurve& hc, double T) {
    std::vector<double> edges{0.0, T};
    for (const auto& p : dc.pillars())
        if (p.time > 0.0 && p.time < T) edges.push_back(p.time);
    for (const auto& s : hc.segments())
        if (s.end_time > 0.0 && s.end_time < T) edges.push_back(s.end_time);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

struct OracleLegs {
    double annuity = 0.0;
    double protection = 0.0;
};

inline OracleLegs trapezoid_legs(const DiscountCurve& dc, const HazardCurve& hc, double T,
                                 double tol = 1e-9) {
    OracleLegs out;
    const auto edges = oracle_panels(dc, hc, T);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i];
        const double b = edges[i + 1];
        const double h = hc.hazard_rate(0.5 * (a + b));
        auto zq = [&](double u) { return dc.discount_factor(u) * hc.survival_probability(u); };
        out.annuity += adaptive_trapezoid(zq, a, b, tol / static_cast<double>(edges.size()));
        out.protection += adaptive_trapezoid([&](double u) { return h * zq(u); }, a, b,
                                             tol / static_cast<double>(edges.size()));
    }
    return out;
}

inline DiscountCurve random_discount_curve(std::mt19937_64& rng, double horizon) {
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_real_distribution<double> fwd(0.0, 0.10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = count(rng);
    std::vector<double> times;
    for (int i = 0; i < n - 1; ++i) times.push_back(horizon * unit(rng));
    times.push_back(horizon);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<DiscountPillar> pillars{{0.0, 1.0}};
    double log_df = 0.0;
    double prev = 0.0;
    for (double t : times) {
        if (t <= prev) continue;
        log_df -= fwd(rng) * (t - prev);
        pillars.push_back({t, std::exp(log_df)});
        prev = t;
    }
    return DiscountCurve(std::move(pillars));
}

inline HazardCurve random_hazard_curve(std::mt19937_64& rng, double horizon, double max_hazard = 0.2) {
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_real_distribution<double> haz(0.0, max_hazard);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = count(rng);
    std::vector<double> ends;
    for (int i = 0; i < n - 1; ++i) ends.push_back(horizon * unit(rng));
    ends.push_back(horizon);
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::vector<HazardSegment> segments;
    for (double e : ends)
        if (e > 0.0) segments.push_back({e, haz(rng)});
    return HazardCurve(std::move(segments));
}

}  // namespace rswap::testing
