/**
 * @file curves.hpp
 * @brief Riskless discount curve, piecewise-constant hazard curve and the
 *        two leg integrals every pricer consumes.
 *
 * Time is a year fraction measured from the valuation date (t = 0).
 * Both curves are piecewise exponential in time, so the products Z·Q and
 * Z·h·Q are integrated in closed form on the merged breakpoint grid.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rswap {

struct DiscountPillar {
    double time;  // years
    double df;    // Z(0, time)
};

/// Riskless zero-coupon curve with log-linear interpolation in the
/// discount factor (piecewise-constant instantaneous forwards).
///
/// The first pillar must be (0, 1). Discount factors must be in (0, 1]
/// and non-increasing, i.e. no negative forwards.
class DiscountCurve {
public:
    explicit DiscountCurve(std::vector<DiscountPillar> pillars);

    /// Flat continuously-compounded curve on [0, horizon].
    static DiscountCurve flat(double rate, double horizon = 100.0);

    /// Z(0, u). Throws DomainError outside [0, max_time()].
    double discount_factor(double u) const;

    /// Instantaneous forward on the pillar interval containing u.
    double forward_rate(double u) const;

    double max_time() const noexcept { return pillars_.back().time; }
    std::span<const DiscountPillar> pillars() const noexcept { return pillars_; }

private:
    std::size_t interval_index(double u) const;

    std::vector<DiscountPillar> pillars_;
    std::vector<double> forwards_;  // forwards_[i] applies on (t_i, t_{i+1}]
};

struct HazardSegment {
    double end_time;  // years
    double hazard;    // per annum
};

enum class Extrapolation { none, flat };

/// Piecewise-constant hazard rate curve. Segment i covers
/// (end_{i-1}, end_i] with end_{-1} = 0.
///
/// Beyond the last segment the curve is undefined unless constructed with
/// Extrapolation::flat, in which case the last hazard extends forever.
class HazardCurve {
public:
    HazardCurve() = default;
    explicit HazardCurve(std::vector<HazardSegment> segments,
                         Extrapolation extrapolation = Extrapolation::none);

    static HazardCurve flat(double hazard, double horizon,
                            Extrapolation extrapolation = Extrapolation::none);

    /// Q(0, u) = exp(-int_0^u h). Throws DomainError outside the domain.
    double survival_probability(double u) const;

    /// Hazard on the segment containing u (right-closed segments, so the
    /// value at an end-time is the hazard of the segment it closes).
    double hazard_rate(double u) const;

    /// Last end-time, or +inf under flat extrapolation.
    double max_time() const noexcept;
    double last_end_time() const noexcept;

    std::span<const HazardSegment> segments() const noexcept { return segments_; }
    Extrapolation extrapolation() const noexcept { return extrapolation_; }

private:
    std::size_t segment_index(double u) const;
    void check_domain(double u) const;

    std::vector<HazardSegment> segments_;
    std::vector<double> cumulative_;  // int_0^{end_i} h
    Extrapolation extrapolation_ = Extrapolation::none;
};

/// Merged, strictly increasing breakpoints of both curves restricted to
/// [from, to], endpoints included.
class TimeGrid {
public:
    TimeGrid(const DiscountCurve& dc, const HazardCurve& hc, double from, double to);

    std::span<const double> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<double> points_;
};

/// Premium (risky annuity) and zero-recovery protection integrals.
struct LegIntegrals {
    double annuity = 0.0;     // int Z Q du
    double protection = 0.0;  // int Z h Q du
};

/// Closed-form integrals of exp(-(f + h) s) and h exp(-(f + h) s) over
/// [0, dt], scaled by the starting weight Z(u0) Q(u0). Uses the linear
/// limit when f + h == 0.
LegIntegrals segment_integrals(double start_weight, double forward, double hazard,
                               double dt);

/// Both integrals over [from, to].
LegIntegrals leg_integrals(const DiscountCurve& dc, const HazardCurve& hc, double from,
                           double to);

/// int_0^T Z(0,u) Q(0,u) du, the risky PV01 of a continuous 1/annum premium.
double risky_annuity(const DiscountCurve& dc, const HazardCurve& hc, double maturity);

/// int_0^T Z(0,u) h(u) Q(0,u) du, the value of unit zero-recovery protection.
double protection_integral(const DiscountCurve& dc, const HazardCurve& hc,
                           double maturity);

}  // namespace rswap
