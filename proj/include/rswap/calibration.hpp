/**
 * @file calibration.hpp
 * @brief Sequential bootstrap of implied hazard rates from CDS spreads and
 *        recovery swap rates.
 *
 * Each tenor T_i fixes the zero-recovery digital spread S_i / (1 - R_i) and
 * the flat hazard on (T_{i-1}, T_i] is chosen so that
 *
 *     S_i / (1 - R_i) * int_0^T_i Z Q du  =  int_0^T_i Z h Q du .
 *
 * No assumption on the joint law of recovery and default enters.
 */

#pragma once

#include <span>
#include <vector>

#include "rswap/curves.hpp"
#include "rswap/root_finding.hpp"

namespace rswap {

struct CdsQuote {
    double tenor;               // years
    double spread;              // per annum, decimal
    double recovery_swap_rate;  // decimal in [0, 1)
};

struct CalibrationSettings {
    double hazard_lower = 1e-12;
    double hazard_upper = 10.0;
    BracketSettings solver{};
    Extrapolation extrapolation = Extrapolation::none;
};

struct CalibrationReport {
    HazardCurve hazard_curve;
    std::vector<double> residuals;  // protection - S0 * annuity at each tenor
    std::vector<int> iterations;
};

/// Throws CalibrationError naming the tenor when no root lies in the hazard
/// bracket, and InconsistentQuotesError when a tenor would need a negative
/// hazard.
CalibrationReport bootstrap_hazard(std::span<const CdsQuote> quotes, const DiscountCurve& dc,
                                   const CalibrationSettings& settings = {});

/// Running spread that prices a floating-recovery CDS at par given the
/// recovery swap rate: (1 - R) * protection / annuity.
double par_cds_spread(const DiscountCurve& dc, const HazardCurve& hc, double recovery_swap_rate,
                      double maturity);

}  // namespace rswap
