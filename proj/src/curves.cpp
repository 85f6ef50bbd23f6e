#include "rswap/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rswap/errors.hpp"

namespace rswap {

namespace {

std::string fmt_time(double u) { return std::to_string(u); }

}  // namespace

DiscountCurve::DiscountCurve(std::vector<DiscountPillar> pillars)
    : pillars_(std::move(pillars)) {
    if (pillars_.empty()) throw DomainError("discount curve needs at least one pillar");
    if (pillars_.front().time != 0.0 || pillars_.front().df != 1.0)
        throw DomainError("first discount pillar must be (0, 1)");
    forwards_.reserve(pillars_.size());
    for (std::size_t i = 1; i < pillars_.size(); ++i) {
        const auto& prev = pillars_[i - 1];
        const auto& cur = pillars_[i];
        if (!(cur.time > prev.time))
            throw DomainError("discount pillar times must be strictly increasing");
        if (!(cur.df > 0.0 && cur.df <= 1.0) || !std::isfinite(cur.df))
            throw DomainError("discount factor at t=" + fmt_time(cur.time) +
                              " outside (0, 1]");
        if (cur.df > prev.df)
            throw DomainError("discount factors must be non-increasing (negative forward at t=" +
                              fmt_time(cur.time) + ")");
        forwards_.push_back(-std::log(cur.df / prev.df) / (cur.time - prev.time));
    }
}

DiscountCurve DiscountCurve::flat(double rate, double horizon) {
    if (!(rate >= 0.0) || !(horizon > 0.0))
        throw DomainError("flat discount curve needs rate >= 0 and horizon > 0");
    return DiscountCurve({{0.0, 1.0}, {horizon, std::exp(-rate * horizon)}});
}

std::size_t DiscountCurve::interval_index(double u) const {
    // index i such that u in (t_i, t_{i+1}]; u == 0 maps to 0.
    auto it = std::lower_bound(pillars_.begin() + 1, pillars_.end(), u,
                               [](const DiscountPillar& p, double x) { return p.time < x; });
    auto i = static_cast<std::size_t>(it - pillars_.begin());
    return i == 0 ? 0 : i - 1;
}

double DiscountCurve::discount_factor(double u) const {
    if (!(u >= 0.0 && u <= max_time()))
        throw DomainError("discount curve evaluated at t=" + fmt_time(u) +
                          " outside [0, " + fmt_time(max_time()) + "]");
    if (pillars_.size() == 1) return 1.0;
    const std::size_t i = interval_index(u);
    const auto& next = pillars_[i + 1];
    if (u == next.time) return next.df;
    const auto& p = pillars_[i];
    return p.df * std::exp(-forwards_[i] * (u - p.time));
}

double DiscountCurve::forward_rate(double u) const {
    if (!(u >= 0.0 && u <= max_time()))
        throw DomainError("forward rate requested at t=" + fmt_time(u) + " outside curve");
    if (forwards_.empty()) return 0.0;
    return forwards_[interval_index(u)];
}

HazardCurve::HazardCurve(std::vector<HazardSegment> segments, Extrapolation extrapolation)
    : segments_(std::move(segments)), extrapolation_(extrapolation) {
    cumulative_.reserve(segments_.size());
    double start = 0.0;
    double acc = 0.0;
    for (const auto& s : segments_) {
        if (!(s.end_time > start))
            throw DomainError("hazard segment end-times must be positive and strictly increasing");
        if (!(s.hazard >= 0.0) || !std::isfinite(s.hazard))
            throw DomainError("hazard rates must be finite and non-negative");
        acc += s.hazard * (s.end_time - start);
        cumulative_.push_back(acc);
        start = s.end_time;
    }
    if (extrapolation_ == Extrapolation::flat && segments_.empty())
        throw DomainError("flat extrapolation needs at least one hazard segment");
}

HazardCurve HazardCurve::flat(double hazard, double horizon, Extrapolation extrapolation) {
    return HazardCurve({{horizon, hazard}}, extrapolation);
}

double HazardCurve::last_end_time() const noexcept {
    return segments_.empty() ? 0.0 : segments_.back().end_time;
}

double HazardCurve::max_time() const noexcept {
    if (extrapolation_ == Extrapolation::flat) return std::numeric_limits<double>::infinity();
    return last_end_time();
}

void HazardCurve::check_domain(double u) const {
    if (!(u >= 0.0 && u <= max_time()))
        throw DomainError("hazard curve evaluated at t=" + fmt_time(u) + " beyond last segment " +
                          fmt_time(last_end_time()));
}

std::size_t HazardCurve::segment_index(double u) const {
    auto it = std::lower_bound(segments_.begin(), segments_.end(), u,
                               [](const HazardSegment& s, double x) { return s.end_time < x; });
    auto i = static_cast<std::size_t>(it - segments_.begin());
    return std::min(i, segments_.size() - 1);  // past the end only under extrapolation
}

double HazardCurve::survival_probability(double u) const {
    check_domain(u);
    if (u == 0.0 || segments_.empty()) return 1.0;
    const std::size_t i = segment_index(u);
    const double start = i == 0 ? 0.0 : segments_[i - 1].end_time;
    const double before = i == 0 ? 0.0 : cumulative_[i - 1];
    return std::exp(-(before + segments_[i].hazard * (u - start)));
}

double HazardCurve::hazard_rate(double u) const {
    check_domain(u);
    if (segments_.empty()) return 0.0;
    return segments_[segment_index(u)].hazard;
}

TimeGrid::TimeGrid(const DiscountCurve& dc, const HazardCurve& hc, double from, double to) {
    if (!(from >= 0.0 && from <= to))
        throw DomainError("time grid needs 0 <= from <= to");
    if (to > dc.max_time())
        throw DomainError("maturity " + fmt_time(to) + " beyond discount curve end " +
                          fmt_time(dc.max_time()));
    if (to > hc.max_time())
        throw DomainError("maturity " + fmt_time(to) + " beyond hazard curve end " +
                          fmt_time(hc.last_end_time()));
    points_.push_back(from);
    for (const auto& p : dc.pillars())
        if (p.time > from && p.time < to) points_.push_back(p.time);
    for (const auto& s : hc.segments())
        if (s.end_time > from && s.end_time < to) points_.push_back(s.end_time);
    if (to > from) points_.push_back(to);
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

LegIntegrals segment_integrals(double start_weight, double forward, double hazard, double dt) {
    const double k = forward + hazard;
    // int_0^dt exp(-k s) ds, linear limit at k == 0
    const double unit = k == 0.0 ? dt : -std::expm1(-k * dt) / k;
    return {start_weight * unit, start_weight * hazard * unit};
}

LegIntegrals leg_integrals(const DiscountCurve& dc, const HazardCurve& hc, double from,
                           double to) {
    const TimeGrid grid(dc, hc, from, to);
    const auto pts = grid.points();
    LegIntegrals total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i];
        const double b = pts[i + 1];
        const double mid = 0.5 * (a + b);
        const double weight = dc.discount_factor(a) * hc.survival_probability(a);
        const auto piece =
            segment_integrals(weight, dc.forward_rate(mid), hc.hazard_rate(mid), b - a);
        total.annuity += piece.annuity;
        total.protection += piece.protection;
    }
    return total;
}

double risky_annuity(const DiscountCurve& dc, const HazardCurve& hc, double maturity) {
    return leg_integrals(dc, hc, 0.0, maturity).annuity;
}

double protection_integral(const DiscountCurve& dc, const HazardCurve& hc, double maturity) {
    return leg_integrals(dc, hc, 0.0, maturity).protection;
}

}  // namespace rswap
