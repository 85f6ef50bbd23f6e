/**
 * @file convexity.hpp
 * @brief Fair recovery swap rates under uncertainty in future market
 *        recovery rates, and the convexity premium this creates.
 *
 * A receiver recovery swap marked through a hazard curve recalibrated to
 * unchanged CDS spreads gains from moves of the market recovery rate in
 * either direction, because the rate enters through 1 / (1 - R). The fair
 * swap rate therefore sits above the expected recovery:
 *
 *   general scenarios     R_swap = E[R S0] / E[S0],  S0 = S_cds / (1 - R)
 *   S0 independent of R   R_swap = E[R]
 *   S_cds independent     R_swap = 1 - 1 / E[1 / (1 - R)]
 *   small sigma           R_swap ~ mean + sigma^2 / (1 - mean)
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rswap/curves.hpp"
#include "rswap/truncated_normal.hpp"

namespace rswap {

/// Normal law of the future market recovery rate, truncated to
/// [lo, hi] with hi < 1 so that E[1 / (1 - R)] exists.
struct RecoveryDistribution {
    double mean = 0.4;
    double stdev = 0.15;
    double lo = 0.0;
    double hi = 0.99;

    void validate() const;
    TruncatedNormal law() const;
};

struct Scenario {
    double weight;
    double recovery;    // decimal
    double cds_spread;  // per annum, decimal
};

struct WeightedValue {
    double weight;
    double value;
};

class ScenarioSet {
public:
    explicit ScenarioSet(std::vector<Scenario> scenarios);

    /// Product-form set: recovery and zero-recovery DDS spread S0 drawn
    /// independently. Each scenario carries the CDS spread S0 (1 - R), so
    /// the fair rate reduces to the mean recovery.
    static ScenarioSet product(std::span<const WeightedValue> recoveries,
                               std::span<const WeightedValue> dds_spreads);

    std::span<const Scenario> scenarios() const noexcept { return scenarios_; }
    std::size_t size() const noexcept { return scenarios_.size(); }

    /// Sum of weight x recovery.
    double expected_recovery() const;

private:
    std::vector<Scenario> scenarios_;
};

/// E[R S0] / E[S0]. Throws DomainError when every spread is zero.
double fair_rate_scenarios(const ScenarioSet& set);

struct QuadratureResult {
    double value = 0.0;
    int order = 0;  // Gauss-Legendre order at convergence
};

/// 1 - 1 / E[1 / (1 - R)] over the truncated law, by Gauss-Legendre with
/// order doubling until successive estimates agree to 1e-12.
/// Throws NumericError if the doubling does not settle.
QuadratureResult fair_rate_exact(const RecoveryDistribution& dist);

struct FairRateApprox {
    double intermediate;  // 1 - (1 - m) / (1 + s^2 / (1 - m)^2)
    double final;         // m + s^2 / (1 - m)
};

FairRateApprox fair_rate_approx(double mean, double stdev);

/// sigma^2 / (1 - mean), the excess of the fair rate over the mean.
double convexity_premium(double mean, double stdev);

/// DDS spread with the convexity premium folded into the recovery:
/// s_cds (1 - r_dds) / (1 - mean) (1 + stdev^2 / (1 - mean)^2).
double fair_dds_spread(double s_cds, double r_dds, double mean, double stdev);

/// Relative second derivative of the no-premium DDS spread in the mean
/// recovery: 2 / (1 - mean)^2.
double dds_gamma(double mean);

struct MonteCarloSettings {
    std::uint64_t seed = 20030415;
    std::size_t draws = 1'000'000;
    std::size_t chunk_size = 1 << 16;  // draws per sub-stream
    unsigned workers = 1;
};

struct MonteCarloEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::size_t draws = 0;
};

/// Sample mean of g(R) with R drawn by inverse-CDF sampling from the
/// truncated law. Chunk k uses its own generator seeded from (seed, k) and
/// chunk statistics are merged in chunk order, so the result is
/// bit-identical for any worker count.
MonteCarloEstimate monte_carlo_expectation(const TruncatedNormal& law,
                                           const std::function<double(double)>& g,
                                           const MonteCarloSettings& settings = {});

/// Fair rate 1 - 1 / E[1 / (1 - R)] by Monte Carlo; the standard error is
/// propagated with the delta method.
MonteCarloEstimate fair_rate_monte_carlo(const RecoveryDistribution& dist,
                                         const MonteCarloSettings& settings = {});

struct ParConsistency {
    double short_leg = 0.0;     // swap to the intermediate time u
    double residual_leg = 0.0;  // scenario-averaged live swap from u to T
    double total() const { return short_leg + residual_leg; }
};

/// Par-consistency residual of a receiver recovery swap split at u.
///
/// RPV01s are frozen at base-curve values: the short leg uses hc_short to u,
/// the residual leg the forward annuity of hc_long on [u, T] conditional on
/// survival to u, discounted to today. Discounting is decoupled from the
/// scenarios. The short-tenor market rate defaults to r_swap_flat (flat
/// recovery term structure). Vanishes when r_swap_flat equals
/// fair_rate_scenarios(scenarios).
ParConsistency par_consistency_residual(const DiscountCurve& dc, const HazardCurve& hc_short,
                                        const HazardCurve& hc_long, const ScenarioSet& scenarios,
                                        double r_swap_flat, double u, double maturity,
                                        std::optional<double> r_swap_short = std::nullopt);

struct FairRateSweep {
    std::vector<double> times;
    std::vector<double> rates;
    double spread() const;  // max - min over the sweep
};

/// Evaluates fair_rate_scenarios at each intermediate time so the
/// dependence on u can be inspected.
FairRateSweep sweep_fair_rate(std::span<const double> times,
                              const std::function<ScenarioSet(double)>& scenarios_at);

}  // namespace rswap
