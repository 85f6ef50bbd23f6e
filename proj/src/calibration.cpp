#include "rswap/calibration.hpp"

#include <cmath>
#include <string>

#include "rswap/errors.hpp"

namespace rswap {

namespace {

std::string tenor_label(double tenor) { return "tenor " + std::to_string(tenor) + "y"; }

void validate(std::span<const CdsQuote> quotes, const DiscountCurve& dc) {
    double prev = 0.0;
    for (const auto& q : quotes) {
        if (!(q.tenor > prev))
            throw DomainError("quote tenors must be positive, unique and sorted ascending");
        if (!(q.spread >= 0.0) || !std::isfinite(q.spread))
            throw DomainError("CDS spread at " + tenor_label(q.tenor) + " must be >= 0");
        if (std::isnan(q.recovery_swap_rate))
            throw DomainError("recovery swap rate missing at " + tenor_label(q.tenor));
        if (!(q.recovery_swap_rate >= 0.0 && q.recovery_swap_rate < 1.0))
            throw DomainError("recovery swap rate at " + tenor_label(q.tenor) +
                              " must lie in [0, 1)");
        prev = q.tenor;
    }
    if (!quotes.empty() && quotes.back().tenor > dc.max_time())
        throw DomainError("discount curve does not cover " + tenor_label(quotes.back().tenor));
}

/// One discount-curve sub-interval of the segment being solved.
struct Piece {
    double offset;  // start - segment start
    double dt;
    double df_start;
    double forward;
};

}  // namespace

CalibrationReport bootstrap_hazard(std::span<const CdsQuote> quotes, const DiscountCurve& dc,
                                   const CalibrationSettings& settings) {
    validate(quotes, dc);

    std::vector<HazardSegment> segments;
    CalibrationReport report;
    segments.reserve(quotes.size());

    for (const auto& quote : quotes) {
        const HazardCurve built(segments);
        const double start = built.last_end_time();
        const LegIntegrals known = leg_integrals(dc, built, 0.0, start);
        const double q_start = built.survival_probability(start);
        const double s0 = quote.spread / (1.0 - quote.recovery_swap_rate);

        // discount pillars split (start, tenor] into constant-forward pieces
        std::vector<Piece> pieces;
        {
            std::vector<double> cuts{start};
            for (const auto& p : dc.pillars())
                if (p.time > start && p.time < quote.tenor) cuts.push_back(p.time);
            cuts.push_back(quote.tenor);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double a = cuts[i];
                const double b = cuts[i + 1];
                pieces.push_back({a - start, b - a, dc.discount_factor(a),
                                  dc.forward_rate(0.5 * (a + b))});
            }
        }

        auto residual = [&](double hazard) {
            double annuity = known.annuity;
            double protection = known.protection;
            for (const auto& p : pieces) {
                const double w = p.df_start * q_start * std::exp(-hazard * p.offset);
                const auto leg = segment_integrals(w, p.forward, hazard, p.dt);
                annuity += leg.annuity;
                protection += leg.protection;
            }
            return protection - s0 * annuity;
        };

        double hazard = 0.0;
        double res = 0.0;
        int iterations = 0;
        const double r_zero = residual(0.0);
        if (quote.spread == 0.0 || r_zero >= 0.0) {
            // residual is increasing in the hazard, so a root needs r(0) <= 0
            if (r_zero != 0.0 && !(r_zero > 0.0 && r_zero <= settings.solver.residual_tolerance))
                throw InconsistentQuotesError(
                    quote.tenor, "inconsistent quotes at " + tenor_label(quote.tenor) +
                                     ": shorter tenors already imply more protection than the "
                                     "spread pays for (negative forward hazard)");
            res = r_zero;
        } else {
            double lo = settings.hazard_lower;
            double r_lo = residual(lo);
            if (r_lo > 0.0) {
                lo = 0.0;
                r_lo = r_zero;
            }
            const double hi = settings.hazard_upper;
            const double r_hi = residual(hi);
            if (r_hi < 0.0)
                throw CalibrationError(quote.tenor, "no hazard root in [" +
                                                        std::to_string(settings.hazard_lower) +
                                                        ", " + std::to_string(hi) + "] at " +
                                                        tenor_label(quote.tenor));
            const RootResult root = solve_bracketed(residual, lo, hi, r_lo, r_hi, settings.solver);
            if (!root.converged)
                throw CalibrationError(quote.tenor,
                                       "hazard solver did not converge at " + tenor_label(quote.tenor));
            hazard = root.x;
            res = root.residual;
            iterations = root.iterations;
        }
        segments.push_back({quote.tenor, hazard});
        report.residuals.push_back(res);
        report.iterations.push_back(iterations);
    }

    const auto extrapolation = segments.empty() ? Extrapolation::none : settings.extrapolation;
    report.hazard_curve = HazardCurve(std::move(segments), extrapolation);
    return report;
}

double par_cds_spread(const DiscountCurve& dc, const HazardCurve& hc, double recovery_swap_rate,
                      double maturity) {
    if (!(recovery_swap_rate < 1.0)) throw DomainError("recovery swap rate must be < 1");
    if (!(maturity > 0.0)) throw DomainError("par spread needs maturity > 0 (annuity is zero)");
    const LegIntegrals legs = leg_integrals(dc, hc, 0.0, maturity);
    return (1.0 - recovery_swap_rate) * legs.protection / legs.annuity;
}

}  // namespace rswap
