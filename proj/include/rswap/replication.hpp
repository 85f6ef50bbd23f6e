/**
 * @file replication.hpp
 * @brief Static replication of a payer recovery swap by a long digital
 *        default swap and a short conventional CDS.
 *
 * Cash flows are per unit recovery swap notional.
 */

#pragma once

#include <string>
#include <vector>

namespace rswap {

struct HedgeRatios {
    double cds;  // notional of CDS sold
    double dds;  // notional of DDS bought
};

/// Ratios that zero the default cash flow for every realized recovery:
/// cds = 1, dds = (1 - r_swap) / (1 - r_dds).
HedgeRatios hedge_ratios(double r_swap, double r_dds);

struct ReplicationPortfolio {
    double r_swap = 0.0;
    double r_dds = 0.0;
    HedgeRatios hedge{1.0, 1.0};
    double s_cds = 0.0;
    double s_dds = 0.0;

    /// Portfolio with no-arbitrage ratios and DDS spread.
    static ReplicationPortfolio balanced(double r_swap, double r_dds, double s_cds);
};

/// Net cash flow on default:
///   (r_swap - h_cds + h_dds (1 - r_dds)) + (h_cds - 1) * realized.
double default_cash_flow(const ReplicationPortfolio& p, double realized_recovery);

/// Net running premium h_cds * s_cds - h_dds * s_dds (positive = income).
double net_premium(const ReplicationPortfolio& p);

struct ReplicationReport {
    ReplicationPortfolio portfolio;
    std::vector<double> recovery_grid;
    std::vector<double> default_cash_flows;
    double max_default_cash_flow = 0.0;  // max |cash flow| over the grid
    double recovery_coefficient = 0.0;   // h_cds - 1, analytic
    double net_premium = 0.0;
    double default_tolerance = 1e-12;
    double premium_tolerance = 1e-15;

    bool default_leg_ok() const;
    bool premium_ok() const;
    bool ok() const { return default_leg_ok() && premium_ok(); }
};

/// Builds the balanced portfolio and checks both zero properties on the
/// recovery grid {0, 0.01, ..., 1}. Failures are reported, not thrown.
ReplicationReport verify_replication(double r_swap, double r_dds, double s_cds);

/// Plain-text table in the replication-table layout with deviation columns.
std::string format_replication_table(const ReplicationReport& report, int precision = -1);

}  // namespace rswap
