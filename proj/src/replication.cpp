#include "rswap/replication.hpp"

#include <algorithm>
#include <cmath>

#include "rswap/errors.hpp"
#include "rswap/format.hpp"
#include "rswap/pricing.hpp"

namespace rswap {

HedgeRatios hedge_ratios(double r_swap, double r_dds) {
    if (!(r_dds < 1.0)) throw DomainError("DDS contractual recovery must be < 1");
    if (!(r_swap < 1.0)) throw DomainError("recovery swap rate must be < 1");
    return {1.0, (1.0 - r_swap) / (1.0 - r_dds)};
}

ReplicationPortfolio ReplicationPortfolio::balanced(double r_swap, double r_dds, double s_cds) {
    return {r_swap, r_dds, hedge_ratios(r_swap, r_dds), s_cds,
            dds_spread_from_cds(s_cds, r_swap, r_dds)};
}

double default_cash_flow(const ReplicationPortfolio& p, double realized_recovery) {
    if (!(realized_recovery >= 0.0 && realized_recovery <= 1.0))
        throw DomainError("realized recovery must lie in [0, 1]");
    const auto& h = p.hedge;
    return (p.r_swap - h.cds + h.dds * (1.0 - p.r_dds)) + (h.cds - 1.0) * realized_recovery;
}

double net_premium(const ReplicationPortfolio& p) {
    return p.hedge.cds * p.s_cds - p.hedge.dds * p.s_dds;
}

bool ReplicationReport::default_leg_ok() const {
    return max_default_cash_flow < default_tolerance && recovery_coefficient == 0.0;
}

bool ReplicationReport::premium_ok() const { return std::abs(net_premium) < premium_tolerance; }

ReplicationReport verify_replication(double r_swap, double r_dds, double s_cds) {
    ReplicationReport report;
    report.portfolio = ReplicationPortfolio::balanced(r_swap, r_dds, s_cds);
    constexpr int steps = 100;
    report.recovery_grid.reserve(steps + 1);
    report.default_cash_flows.reserve(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        const double realized = static_cast<double>(i) / steps;
        const double cf = default_cash_flow(report.portfolio, realized);
        report.recovery_grid.push_back(realized);
        report.default_cash_flows.push_back(cf);
        report.max_default_cash_flow = std::max(report.max_default_cash_flow, std::abs(cf));
    }
    report.recovery_coefficient = report.portfolio.hedge.cds - 1.0;
    report.net_premium = net_premium(report.portfolio);
    return report;
}

std::string format_replication_table(const ReplicationReport& report, int precision) {
    const auto& p = report.portfolio;
    auto num = [precision](double x) { return format_number(x, precision); };
    const double constant = p.r_swap - p.hedge.cds + p.hedge.dds * (1.0 - p.r_dds);

    std::vector<std::vector<std::string>> rows{
        {"Payer Recovery Swap", "1", "-", num(p.r_swap) + " - R", "-"},
        {"Buy: Digital CDS", num(p.hedge.dds), "-" + num(p.s_dds), num(1.0 - p.r_dds), "-"},
        {"Sell: Conventional CDS", num(p.hedge.cds), "+" + num(p.s_cds), "-(1 - R)", "-"},
        {"Net Payments", "", num(net_premium(p)),
         num(constant) + " + " + num(report.recovery_coefficient) + " * R", "-"},
    };
    std::string out = format_table(
        {"Leg", "Notional", "Premium", "Payoff in case of default", "Payoff when no default"},
        rows);
    out += '\n';
    out += format_table(
        {"Check", "Max deviation", "Tolerance", "Status"},
        {{"Default cash flow (R in 0..1 step 0.01)", num(report.max_default_cash_flow),
          format_number(report.default_tolerance), report.default_leg_ok() ? "ok" : "FAIL"},
         {"Net premium", num(std::abs(report.net_premium)),
          format_number(report.premium_tolerance), report.premium_ok() ? "ok" : "FAIL"}});
    return out;
}

}  // namespace rswap
