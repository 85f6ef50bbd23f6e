/**
 * @file market_io.hpp
 * @brief Quote files and the implied-recovery scanner.
 *
 * Units at the file boundary follow market quoting: recoveries in percent,
 * spreads in basis points. Everything is converted to decimals on read by
 * exact division by 100 and 10000.
 *
 * Schemas (header line required, exact column order):
 *   quotes     ticker,recovery_swap_rate_pct,cds_spread_bp,dds_spread_bp,dds_contractual_recovery_pct
 *   cds quotes tenor_years,cds_spread_bp,recovery_swap_rate_pct
 *   discount   time_years,discount_factor
 *   scenarios  weight,recovery_pct,cds_spread_bp
 */

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rswap/calibration.hpp"
#include "rswap/convexity.hpp"
#include "rswap/curves.hpp"

namespace rswap {

struct QuoteRow {
    std::string ticker;
    double recovery_swap_rate = 0.0;  // decimal
    double cds_spread = 0.0;          // per annum, decimal
    std::optional<double> dds_spread;
    double dds_contractual_recovery = 0.0;
};

std::vector<QuoteRow> parse_quotes(std::istream& in);

/// Writes the quote CSV such that parse_quotes reproduces every field
/// bit for bit.
std::string serialize_quotes(std::span<const QuoteRow> rows);

std::vector<CdsQuote> parse_cds_quotes(std::istream& in);

/// A missing t = 0 row is implied as discount factor 1.
DiscountCurve parse_discount_curve(std::istream& in);

ScenarioSet parse_scenarios(std::istream& in);

struct ScanRow {
    std::string ticker;
    double quoted_recovery = 0.0;
    std::optional<double> implied_recovery;  // absent without a DDS quote
    std::optional<double> gap;               // implied - quoted
    double theoretical_dds = 0.0;            // at the row's contractual recovery
    bool arbitrage_flag = false;
    std::string diagnostic;
};

struct ScanReport {
    double gap_threshold = 0.01;
    std::vector<ScanRow> rows;

    bool any_flag() const;
};

/// Implied recovery and no-arbitrage DDS spread per row. A row is flagged
/// when its quotes violate the implied-recovery bound or the gap to the
/// quoted recovery swap rate exceeds the threshold.
ScanReport scan(std::span<const QuoteRow> rows, double gap_threshold = 0.01);

/// precision < 0 prints full round-trip precision.
std::string scan_to_csv(const ScanReport& report, int precision = -1);
std::string scan_to_json(const ScanReport& report, int precision = -1);
std::string scan_to_table(const ScanReport& report, int precision = -1);

std::string hazard_curve_to_json(const CalibrationReport& report, int precision = -1);

/// Reads the segments of a hazard-curve JSON document written by
/// hazard_curve_to_json.
HazardCurve hazard_curve_from_json(const std::string& text,
                                   Extrapolation extrapolation = Extrapolation::none);

}  // namespace rswap
