/**
 * @file pricing.hpp
 * @brief Recovery swap, digital default swap and CDS pricing under the
 *        static no-arbitrage relation between the three.
 *
 * All spreads are per-annum decimals and all recoveries are decimals.
 * PVs are computed per unit notional and scaled at the boundary.
 */

#pragma once

#include "rswap/curves.hpp"

namespace rswap {

/// Which side receives the realized recovery.
enum class Direction {
    payer,     // pays realized recovery, receives the swap rate
    receiver,  // receives realized recovery, pays the swap rate
};

struct RecoverySwapTrade {
    Direction direction = Direction::payer;
    double swap_rate = 0.0;  // [0, 1)
    double maturity = 0.0;   // years
    double notional = 1.0;

    void validate() const;
};

struct DdsTerms {
    double contractual_recovery = 0.0;  // [0, 1)
    double maturity = 0.0;
};

/// Cash exchanged on default; zero if the name survives to maturity.
double recovery_swap_payoff(const RecoverySwapTrade& trade, double realized_recovery,
                            bool defaulted);

/// No-arbitrage DDS spread for contractual recovery r_dds implied by the
/// CDS spread and the recovery swap rate: s_cds (1 - r_dds) / (1 - r_swap).
double dds_spread_from_cds(double s_cds, double r_swap, double r_dds);

/// Recovery rate implied by a CDS spread and a zero-contractual-recovery
/// DDS spread. Throws ArbitrageError when s_cds > s_dds_zero.
double implied_recovery(double s_cds, double s_dds_zero);

/// Spread ~ hazard x (1 - recovery).
double credit_triangle_spread(double hazard, double recovery);

struct RecoverySwapPvOptions {
    /// Recompute the par spread from the curves and reject a hazard curve
    /// that is not calibrated to (s_cds, r_mkt) at the trade maturity.
    bool verify_calibration = true;
    double calibration_tolerance = 1e-6;
};

/// Mark-to-market of a seasoned recovery swap:
///   receiver PV = (r_mkt - rate) / (1 - r_mkt) * s_cds * RPV01.
/// Payer PV is the negation. Scaled by the trade notional.
double recovery_swap_pv(const DiscountCurve& dc, const HazardCurve& hc,
                        const RecoverySwapTrade& trade, double r_mkt, double s_cds,
                        const RecoverySwapPvOptions& options = {});

/// Same value through the protection leg, (r_mkt - rate) * int Z h Q.
/// Agrees with recovery_swap_pv only on a consistently calibrated curve.
double recovery_swap_pv_direct(const DiscountCurve& dc, const HazardCurve& hc,
                               const RecoverySwapTrade& trade, double r_mkt);

}  // namespace rswap
