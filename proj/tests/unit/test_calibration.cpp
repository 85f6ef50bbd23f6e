#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rswap/calibration.hpp"
#include "rswap/errors.hpp"

namespace rswap {
namespace {

/// Five-tenor quote set with spreads in [10, 500] bp and recoveries in
/// [0, 60%]. Pairs are ordered by zero-recovery spread S / (1 - R) so the
/// term structure admits non-negative forward hazards.
std::vector<CdsQuote> random_quotes(std::mt19937_64& rng) {
    static const double tenors[] = {1.0, 2.0, 3.0, 5.0, 7.0};
    std::uniform_real_distribution<double> spread(0.0010, 0.0500), recovery(0.0, 0.60);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 5; ++i) pairs.emplace_back(spread(rng), recovery(rng));
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return a.first / (1.0 - a.second) < b.first / (1.0 - b.second);
    });
    std::vector<CdsQuote> out;
    for (int i = 0; i < 5; ++i) out.push_back({tenors[i], pairs[i].first, pairs[i].second});
    return out;
}

TEST(Bootstrap, CreditTriangleHoldsExactlyForFlatInputs) {
    const std::vector<CdsQuote> quotes{{5.0, 0.0060, 0.40}};
    const auto report = bootstrap_hazard(quotes, DiscountCurve::flat(0.0));
    ASSERT_EQ(report.hazard_curve.segments().size(), 1u);
    EXPECT_NEAR(report.hazard_curve.segments()[0].hazard, 0.01, 1e-15);
}

TEST(Bootstrap, ZeroSpreadGivesZeroHazard) {
    const std::vector<CdsQuote> quotes{{5.0, 0.0, 0.40}};
    const auto report = bootstrap_hazard(quotes, DiscountCurve::flat(0.05));
    EXPECT_EQ(report.hazard_curve.segments()[0].hazard, 0.0);
    EXPECT_EQ(report.residuals[0], 0.0);
}

TEST(Bootstrap, TwoTenorRoundTrip) {
    const std::vector<CdsQuote> quotes{{1.0, 0.0100, 0.40}, {5.0, 0.0150, 0.35}};
    const auto dc = DiscountCurve::flat(0.03);
    const auto report = bootstrap_hazard(quotes, dc);
    const auto& hc = report.hazard_curve;
    ASSERT_EQ(hc.segments().size(), 2u);
    EXPECT_NEAR(par_cds_spread(dc, hc, 0.40, 1.0), 0.0100, 1e-8);
    EXPECT_NEAR(par_cds_spread(dc, hc, 0.35, 5.0), 0.0150, 1e-8);
    // first segment is flat on [0, 1], so the triangle holds there
    EXPECT_NEAR(hc.segments()[0].hazard, 0.0100 / 0.60, 1e-14);
    EXPECT_GT(hc.segments()[1].hazard, hc.segments()[0].hazard);
    for (double r : report.residuals) EXPECT_LE(std::abs(r), 1e-12);
}

TEST(Bootstrap, FlatInputsAcrossManyTenors) {
    const auto dc = DiscountCurve::flat(0.05);
    std::vector<CdsQuote> quotes;
    for (double t : {0.5, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0}) quotes.push_back({t, 0.0200, 0.25});
    const auto report = bootstrap_hazard(quotes, dc);
    for (const auto& s : report.hazard_curve.segments())
        EXPECT_NEAR(s.hazard / (0.0200 / 0.75), 1.0, 1e-10);
}

TEST(Bootstrap, RoundTripOnRandomTermStructures) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> rate(0.0, 0.08);
    for (int n = 0; n < 100; ++n) {
        const auto quotes = random_quotes(rng);
        const auto dc = DiscountCurve::flat(rate(rng), 10.0);
        const auto report = bootstrap_hazard(quotes, dc);
        for (const auto& q : quotes)
            EXPECT_NEAR(par_cds_spread(dc, report.hazard_curve, q.recovery_swap_rate, q.tenor),
                        q.spread, 1e-8);
        for (double r : report.residuals) EXPECT_LE(std::abs(r), 1e-12);
    }
}

TEST(Bootstrap, HigherSpreadNeverLowersHazard) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_real_distribution<double> bump(0.0, 0.0020);
    const auto dc = DiscountCurve::flat(0.03, 10.0);
    for (int n = 0; n < 100; ++n) {
        const auto quotes = random_quotes(rng);
        auto bumped = quotes;
        const int k = pick(rng);
        bumped[k].spread += bump(rng);
        // later tenors may become inconsistent after the bump; solve up to k
        const auto base = bootstrap_hazard(std::span(quotes).first(k + 1), dc);
        const auto up = bootstrap_hazard(std::span(bumped).first(k + 1), dc);
        EXPECT_GE(up.hazard_curve.segments()[k].hazard, base.hazard_curve.segments()[k].hazard);
    }
}

TEST(Bootstrap, HazardGrowsWithRecoverySwapRate) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_real_distribution<double> bump(0.001, 0.05);
    const auto dc = DiscountCurve::flat(0.03, 10.0);
    for (int n = 0; n < 100; ++n) {
        const auto quotes = random_quotes(rng);
        auto bumped = quotes;
        const int k = pick(rng);
        bumped[k].recovery_swap_rate += bump(rng);
        // later tenors may become inconsistent after the bump; solve up to k
        const auto base = bootstrap_hazard(std::span(quotes).first(k + 1), dc);
        const auto up = bootstrap_hazard(std::span(bumped).first(k + 1), dc);
        EXPECT_GT(up.hazard_curve.segments()[k].hazard, base.hazard_curve.segments()[k].hazard);
    }
}

TEST(Bootstrap, UsesNonFlatDiscountCurve) {
    const DiscountCurve dc({{0.0, 1.0}, {0.5, 0.99}, {2.0, 0.95}, {4.0, 0.88}, {10.0, 0.6}});
    const std::vector<CdsQuote> quotes{{1.0, 0.0050, 0.40}, {3.0, 0.0080, 0.40}, {7.0, 0.0120, 0.30}};
    const auto report = bootstrap_hazard(quotes, dc);
    for (const auto& q : quotes)
        EXPECT_NEAR(par_cds_spread(dc, report.hazard_curve, q.recovery_swap_rate, q.tenor), q.spread,
                    1e-12);
}

TEST(Bootstrap, ZeroSpreadAfterPositiveHazardIsInconsistent) {
    const std::vector<CdsQuote> quotes{{1.0, 0.0100, 0.40}, {2.0, 0.0, 0.40}};
    try {
        bootstrap_hazard(quotes, DiscountCurve::flat(0.02));
        FAIL() << "expected InconsistentQuotesError";
    } catch (const InconsistentQuotesError& e) {
        EXPECT_EQ(e.tenor(), 2.0);
    }
}

TEST(Bootstrap, SteeplyInvertedCurveIsInconsistent) {
    const std::vector<CdsQuote> quotes{{1.0, 0.0500, 0.40}, {2.0, 0.0010, 0.40}};
    EXPECT_THROW(bootstrap_hazard(quotes, DiscountCurve::flat(0.02)), InconsistentQuotesError);
}

TEST(Bootstrap, NoRootInBracketNamesTenor) {
    const std::vector<CdsQuote> quotes{{1.0, 0.0100, 0.40}, {3.0, 12.0, 0.0}};
    try {
        bootstrap_hazard(quotes, DiscountCurve::flat(0.02));
        FAIL() << "expected CalibrationError";
    } catch (const CalibrationError& e) {
        EXPECT_EQ(e.tenor(), 3.0);
        EXPECT_NE(std::string(e.what()).find("tenor 3"), std::string::npos);
    }
}

TEST(Bootstrap, ValidatesQuotes) {
    const auto dc = DiscountCurve::flat(0.02, 10.0);
    EXPECT_THROW(bootstrap_hazard(std::vector<CdsQuote>{{2.0, 0.01, 0.4}, {1.0, 0.01, 0.4}}, dc),
                 DomainError);
    EXPECT_THROW(bootstrap_hazard(std::vector<CdsQuote>{{1.0, 0.01, 0.4}, {1.0, 0.01, 0.4}}, dc),
                 DomainError);
    EXPECT_THROW(bootstrap_hazard(std::vector<CdsQuote>{{1.0, -0.01, 0.4}}, dc), DomainError);
    EXPECT_THROW(bootstrap_hazard(std::vector<CdsQuote>{{1.0, 0.01, 1.0}}, dc), DomainError);
    EXPECT_THROW(bootstrap_hazard(std::vector<CdsQuote>{{1.0, 0.01, NAN}}, dc), DomainError);
    EXPECT_THROW(bootstrap_hazard(std::vector<CdsQuote>{{12.0, 0.01, 0.4}}, dc), DomainError);
}

TEST(Bootstrap, ExtrapolationFlag) {
    const std::vector<CdsQuote> quotes{{5.0, 0.0060, 0.40}};
    const auto dc = DiscountCurve::flat(0.0, 20.0);
    EXPECT_THROW(bootstrap_hazard(quotes, dc).hazard_curve.survival_probability(6.0), DomainError);
    CalibrationSettings settings;
    settings.extrapolation = Extrapolation::flat;
    const auto hc = bootstrap_hazard(quotes, dc, settings).hazard_curve;
    EXPECT_NEAR(hc.survival_probability(6.0), std::exp(-0.06), 1e-14);
}

TEST(ParCdsSpread, FlatTriangle) {
    const auto hc = HazardCurve::flat(0.01, 10.0);
    for (double r : {0.0, 0.03, 0.08})
        for (double T : {0.5, 5.0, 10.0})
            EXPECT_NEAR(par_cds_spread(DiscountCurve::flat(r), hc, 0.40, T), 0.0060, 1e-15);
    EXPECT_EQ(par_cds_spread(DiscountCurve::flat(0.03), HazardCurve::flat(0.0, 10.0), 0.40, 5.0), 0.0);
}

TEST(ParCdsSpread, Errors) {
    const auto dc = DiscountCurve::flat(0.03);
    const auto hc = HazardCurve::flat(0.01, 10.0);
    EXPECT_THROW(par_cds_spread(dc, hc, 0.40, 0.0), DomainError);
    EXPECT_THROW(par_cds_spread(dc, hc, 1.0, 5.0), DomainError);
}

}  // namespace
}  // namespace rswap
