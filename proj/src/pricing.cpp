#include "rswap/pricing.hpp"

#include <cmath>
#include <string>

#include "rswap/calibration.hpp"
#include "rswap/errors.hpp"

namespace rswap {

namespace {

double sign(Direction d) { return d == Direction::receiver ? 1.0 : -1.0; }

void require_recovery(double r, const char* name) {
    if (!(r < 1.0) || std::isnan(r)) throw DomainError(std::string(name) + " must be < 1");
}

}  // namespace

void RecoverySwapTrade::validate() const {
    if (!(swap_rate >= 0.0 && swap_rate < 1.0))
        throw DomainError("recovery swap rate must lie in [0, 1)");
    if (!(maturity > 0.0)) throw DomainError("recovery swap maturity must be > 0");
    if (!(notional > 0.0)) throw DomainError("recovery swap notional must be > 0");
}

double recovery_swap_payoff(const RecoverySwapTrade& trade, double realized_recovery,
                            bool defaulted) {
    if (!defaulted) return 0.0;
    if (!(realized_recovery >= 0.0 && realized_recovery <= 1.0))
        throw DomainError("realized recovery must lie in [0, 1]");
    // payer receives the fixed rate against the realized recovery
    return -sign(trade.direction) * trade.notional * (trade.swap_rate - realized_recovery);
}

double dds_spread_from_cds(double s_cds, double r_swap, double r_dds) {
    require_recovery(r_swap, "recovery swap rate");
    require_recovery(r_dds, "DDS contractual recovery");
    if (!(s_cds >= 0.0)) throw DomainError("CDS spread must be >= 0");
    return s_cds * (1.0 - r_dds) / (1.0 - r_swap);
}

double implied_recovery(double s_cds, double s_dds_zero) {
    if (!(s_dds_zero > 0.0)) throw DomainError("zero-recovery DDS spread must be > 0");
    if (!(s_cds >= 0.0)) throw DomainError("CDS spread must be >= 0");
    if (s_cds > s_dds_zero)
        throw ArbitrageError("CDS spread exceeds zero-recovery DDS spread: floating-recovery "
                             "protection priced above full-notional protection");
    return 1.0 - s_cds / s_dds_zero;
}

double credit_triangle_spread(double hazard, double recovery) {
    if (!(hazard >= 0.0)) throw DomainError("hazard must be >= 0");
    require_recovery(recovery, "recovery");
    return hazard * (1.0 - recovery);
}

double recovery_swap_pv(const DiscountCurve& dc, const HazardCurve& hc,
                        const RecoverySwapTrade& trade, double r_mkt, double s_cds,
                        const RecoverySwapPvOptions& options) {
    trade.validate();
    require_recovery(r_mkt, "market recovery swap rate");
    if (options.verify_calibration) {
        const double par = par_cds_spread(dc, hc, r_mkt, trade.maturity);
        if (std::abs(par - s_cds) > options.calibration_tolerance)
            throw DomainError("hazard curve is not calibrated to the quoted CDS spread and "
                              "market recovery swap rate (par spread " + std::to_string(par) +
                              " vs quoted " + std::to_string(s_cds) + ")");
    }
    const double rpv01 = risky_annuity(dc, hc, trade.maturity);
    const double receiver = (r_mkt - trade.swap_rate) / (1.0 - r_mkt) * s_cds * rpv01;
    return sign(trade.direction) * trade.notional * receiver;
}

double recovery_swap_pv_direct(const DiscountCurve& dc, const HazardCurve& hc,
                               const RecoverySwapTrade& trade, double r_mkt) {
    trade.validate();
    require_recovery(r_mkt, "market recovery swap rate");
    const double receiver = (r_mkt - trade.swap_rate) * protection_integral(dc, hc, trade.maturity);
    return sign(trade.direction) * trade.notional * receiver;
}

}  // namespace rswap
