#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rswap/errors.hpp"
#include "rswap/market_io.hpp"

namespace rswap {
namespace {

const char* const kHeader =
    "ticker,recovery_swap_rate_pct,cds_spread_bp,dds_spread_bp,dds_contractual_recovery_pct\n";

std::vector<QuoteRow> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_quotes(in);
}

std::vector<QuoteRow> sample_quotes() {
    return parse(std::string(kHeader) +
                 "CA,34.5,80,122,0\nFMC,39.5,174,289,0\nGECC,38.0,26,42,0\nT,37.0,242,386,0\n");
}

TEST(ParseQuotes, PrintedTable) {
    const auto rows = sample_quotes();
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].ticker, "CA");
    EXPECT_EQ(rows[0].recovery_swap_rate, 0.345);
    EXPECT_EQ(rows[0].cds_spread, 0.0080);
    EXPECT_EQ(*rows[0].dds_spread, 0.0122);
    EXPECT_EQ(rows[0].dds_contractual_recovery, 0.0);
    EXPECT_EQ(rows[3].ticker, "T");
}

TEST(ParseQuotes, HeaderOnlyAndBlankDds) {
    EXPECT_TRUE(parse(kHeader).empty());
    const auto rows = parse(std::string(kHeader) + "XYZ,40,100,,\n");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].dds_spread.has_value());
    EXPECT_EQ(rows[0].dds_contractual_recovery, 0.0);
}

TEST(ParseQuotes, RowNumberedErrors) {
    try {
        parse(std::string(kHeader) + "A,40,100,,\nA,40,100,,\nB,abc,100,,\nC,100,5,,\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        ASSERT_EQ(e.problems().size(), 3u);
        EXPECT_NE(e.problems()[0].find("line 3"), std::string::npos);
        EXPECT_NE(e.problems()[0].find("duplicate"), std::string::npos);
        EXPECT_NE(e.problems()[1].find("line 4"), std::string::npos);
        EXPECT_NE(e.problems()[2].find("line 5"), std::string::npos);
    }
    EXPECT_THROW(parse("ticker,rate\n"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse(std::string(kHeader) + "A,40,100\n"), ParseError);
}

TEST(ParseQuotes, ToleratesBomAndCrlf) {
    const auto rows = parse("\xEF\xBB\xBF" + std::string(kHeader) + "CA,34.5,80,122,0\r\n\r\n");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(*rows[0].dds_spread, 0.0122);
}

TEST(SerializeQuotes, RoundTripsBitExactly) {
    // random files: quotes with up to 17 significant digits in market units
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pct(0.0, 94.0), bp(0.0, 2000.0);
    std::uniform_int_distribution<int> digits(1, 17);
    std::bernoulli_distribution has_dds(0.7);
    auto text = [&](double x) {
        std::ostringstream os;
        os.precision(digits(rng));
        os << x;
        return os.str();
    };
    for (int n = 0; n < 50; ++n) {
        std::string file = kHeader;
        for (int i = 0; i < 20; ++i) {
            file += "T" + std::to_string(i) + "," + text(pct(rng)) + "," + text(bp(rng)) + ",";
            if (has_dds(rng)) file += text(bp(rng));
            file += "," + (i % 3 == 0 ? text(pct(rng)) : std::string()) + "\n";
        }
        const auto rows = parse(file);
        const auto back = parse(serialize_quotes(rows));
        ASSERT_EQ(back.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            EXPECT_EQ(back[i].ticker, rows[i].ticker);
            EXPECT_EQ(back[i].recovery_swap_rate, rows[i].recovery_swap_rate);
            EXPECT_EQ(back[i].cds_spread, rows[i].cds_spread);
            EXPECT_EQ(back[i].dds_spread, rows[i].dds_spread);
            EXPECT_EQ(back[i].dds_contractual_recovery, rows[i].dds_contractual_recovery);
        }
        EXPECT_EQ(serialize_quotes(back), serialize_quotes(rows));
    }
}

TEST(ParseCdsQuotes, ReadsTenorsAndRequiresRecovery) {
    std::istringstream in("tenor_years,cds_spread_bp,recovery_swap_rate_pct\n1,100,40\n5,150,35\n");
    const auto q = parse_cds_quotes(in);
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[1].tenor, 5.0);
    EXPECT_EQ(q[1].spread, 0.0150);
    EXPECT_EQ(q[1].recovery_swap_rate, 0.35);
    std::istringstream blank("tenor_years,cds_spread_bp,recovery_swap_rate_pct\n1,100,\n");
    EXPECT_THROW(parse_cds_quotes(blank), ParseError);
}

TEST(ParseDiscountCurve, ImpliesTimeZero) {
    std::istringstream in("time_years,discount_factor\n1,0.97\n5,0.85\n");
    const auto dc = parse_discount_curve(in);
    ASSERT_EQ(dc.pillars().size(), 3u);
    EXPECT_EQ(dc.discount_factor(0.0), 1.0);
    EXPECT_EQ(dc.discount_factor(5.0), 0.85);
    std::istringstream bad("time_years,discount_factor\n5,0.85\n1,0.97\n");
    EXPECT_THROW(parse_discount_curve(bad), ParseError);
}

TEST(ParseScenarios, PercentAndBasisPoints) {
    std::istringstream in("weight,recovery_pct,cds_spread_bp\n0.5,30,100\n0.5,50,100\n");
    const auto set = parse_scenarios(in);
    ASSERT_EQ(set.size(), 2u);
    EXPECT_EQ(set.scenarios()[1].recovery, 0.5);
    EXPECT_EQ(set.scenarios()[1].cds_spread, 0.01);
    std::istringstream bad("weight,recovery_pct,cds_spread_bp\n0.5,30,100\n");
    EXPECT_THROW(parse_scenarios(bad), ParseError);
}

TEST(Scan, PrintedTableImpliedRecoveries) {
    const auto report = scan(sample_quotes());
    ASSERT_EQ(report.rows.size(), 4u);
    const double expected[] = {0.344262, 0.397924, 0.380952, 0.373057};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(*report.rows[i].implied_recovery, expected[i], 5e-7);
        EXPECT_EQ(*report.rows[i].gap,
                  *report.rows[i].implied_recovery - report.rows[i].quoted_recovery);
        EXPECT_FALSE(report.rows[i].arbitrage_flag);
    }
    EXPECT_FALSE(report.any_flag());
    EXPECT_NEAR(report.rows[0].theoretical_dds, 0.008 / 0.655, 1e-18);
}

TEST(Scan, FlagsViolationsAndLargeGaps) {
    const auto rows = parse(std::string(kHeader) +
                            "BAD,40,300,200,0\nFAR,20,60,100,0\nNODDS,40,60,,\nEXACT,40,60,100,0\n");
    const auto report = scan(rows, 0.01);
    EXPECT_TRUE(report.rows[0].arbitrage_flag);
    EXPECT_FALSE(report.rows[0].implied_recovery.has_value());
    EXPECT_FALSE(report.rows[0].diagnostic.empty());
    EXPECT_TRUE(report.rows[1].arbitrage_flag);
    EXPECT_FALSE(report.rows[2].arbitrage_flag);
    EXPECT_FALSE(report.rows[2].implied_recovery.has_value());
    EXPECT_NEAR(report.rows[2].theoretical_dds, 0.01, 1e-17);
    EXPECT_FALSE(report.rows[3].arbitrage_flag);
    EXPECT_NEAR(*report.rows[3].gap, 0.0, 1e-15);
}

TEST(Scan, ContractualRecoveryIsRestated) {
    // 100bp DDS paying 75% of notional is 133.33bp at zero contractual recovery
    const auto rows = parse(std::string(kHeader) + "X,40,80,100,25\n");
    const auto report = scan(rows);
    EXPECT_NEAR(*report.rows[0].implied_recovery, 1.0 - 0.008 / (0.01 / 0.75), 1e-15);
    EXPECT_NEAR(report.rows[0].theoretical_dds, 0.008 * 0.75 / 0.6, 1e-17);
}

TEST(Scan, ThresholdOnlyMovesTheFlag) {
    const auto rows = sample_quotes();
    const auto loose = scan(rows, 0.01), tight = scan(rows, 0.001);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(loose.rows[i].ticker, tight.rows[i].ticker);
        EXPECT_EQ(loose.rows[i].implied_recovery, tight.rows[i].implied_recovery);
        EXPECT_EQ(loose.rows[i].gap, tight.rows[i].gap);
        EXPECT_EQ(loose.rows[i].theoretical_dds, tight.rows[i].theoretical_dds);
    }
    EXPECT_TRUE(tight.any_flag());  // FMC and T sit about 0.3 pp off
}

TEST(Scan, CsvColumns) {
    const auto csv = scan_to_csv(scan(sample_quotes()), 2);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "ticker,quoted_recovery_pct,implied_recovery_pct,gap_pct,theoretical_dds_bp,"
              "arbitrage_flag,diagnostic");
    EXPECT_NE(csv.find("CA,34.50,34.43,-0.07,122.14,false,"), std::string::npos);
}

TEST(HazardCurveJson, RoundTrip) {
    CalibrationReport report;
    report.hazard_curve = HazardCurve({{1.0, 0.0123}, {5.0, 0.0456789}}, Extrapolation::none);
    report.residuals = {1e-17, -2e-16};
    const auto text = hazard_curve_to_json(report);
    EXPECT_NE(text.find("\"end_time_years\""), std::string::npos);
    EXPECT_LT(text.find("segments"), text.find("residuals"));
    const auto back = hazard_curve_from_json(text);
    ASSERT_EQ(back.segments().size(), 2u);
    EXPECT_EQ(back.segments()[1].hazard, 0.0456789);
    EXPECT_EQ(back.segments()[1].end_time, 5.0);
    EXPECT_THROW(hazard_curve_from_json("{\"segments\": 3}"), ParseError);
    EXPECT_THROW(hazard_curve_from_json("not json"), ParseError);
}

}  // namespace
}  // namespace rswap
