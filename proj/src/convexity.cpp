#include "rswap/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "rswap/calibration.hpp"
#include "rswap/errors.hpp"
#include "rswap/quadrature.hpp"

namespace rswap {

void RecoveryDistribution::validate() const {
    if (!(lo >= 0.0 && lo < hi)) throw DomainError("recovery support needs 0 <= lo < hi");
    if (!(hi <= 0.99)) throw DomainError("recovery support upper bound must be <= 0.99");
    if (!(mean > lo && mean < hi)) throw DomainError("mean recovery must lie inside the support");
    if (!(stdev > 0.0) || !std::isfinite(stdev)) throw DomainError("recovery stdev must be > 0");
}

TruncatedNormal RecoveryDistribution::law() const {
    validate();
    return TruncatedNormal(mean, stdev, lo, hi);
}

ScenarioSet::ScenarioSet(std::vector<Scenario> scenarios) : scenarios_(std::move(scenarios)) {
    if (scenarios_.empty()) throw DomainError("scenario set is empty");
    double total = 0.0;
    for (const auto& s : scenarios_) {
        if (!(s.weight >= 0.0)) throw DomainError("scenario weights must be >= 0");
        if (!(s.recovery >= 0.0 && s.recovery < 1.0))
            throw DomainError("scenario recoveries must lie in [0, 1)");
        if (!(s.cds_spread >= 0.0) || !std::isfinite(s.cds_spread))
            throw DomainError("scenario CDS spreads must be >= 0");
        total += s.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DomainError("scenario weights sum to " + std::to_string(total) + ", expected 1");
}

ScenarioSet ScenarioSet::product(std::span<const WeightedValue> recoveries,
                                 std::span<const WeightedValue> dds_spreads) {
    std::vector<Scenario> out;
    out.reserve(recoveries.size() * dds_spreads.size());
    for (const auto& r : recoveries)
        for (const auto& s : dds_spreads)
            out.push_back({r.weight * s.weight, r.value, s.value * (1.0 - r.value)});
    return ScenarioSet(std::move(out));
}

double ScenarioSet::expected_recovery() const {
    double acc = 0.0;
    for (const auto& s : scenarios_) acc += s.weight * s.recovery;
    return acc;
}

double fair_rate_scenarios(const ScenarioSet& set) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& s : set.scenarios()) {
        const double s0 = s.weight * s.cds_spread / (1.0 - s.recovery);
        num += s.recovery * s0;
        den += s0;
    }
    if (!(den > 0.0)) throw DomainError("fair rate undefined: every scenario spread is zero");
    return num / den;
}

QuadratureResult fair_rate_exact(const RecoveryDistribution& dist) {
    const TruncatedNormal law = dist.law();
    // the density is negligible beyond 12 sigma
    const double a = std::max(dist.lo, dist.mean - 12.0 * dist.stdev);
    const double b = std::min(dist.hi, dist.mean + 12.0 * dist.stdev);
    auto estimate = [&](int order) {
        const auto rule = GaussLegendreRule::make(order);
        const double mass = rule.integrate([&](double r) { return law.pdf(r); }, a, b);
        const double inv = rule.integrate([&](double r) { return law.pdf(r) / (1.0 - r); }, a, b);
        return 1.0 - mass / inv;
    };
    double previous = estimate(8);
    for (int order = 16; order <= 4096; order *= 2) {
        const double current = estimate(order);
        if (std::abs(current - previous) < 1e-12) return {current, order};
        previous = current;
    }
    throw NumericError("fair_rate_exact: Gauss-Legendre order doubling did not converge");
}

FairRateApprox fair_rate_approx(double mean, double stdev) {
    if (!(mean < 1.0)) throw DomainError("mean recovery must be < 1");
    const double loss = 1.0 - mean;
    const double ratio = stdev * stdev / (loss * loss);
    return {1.0 - loss / (1.0 + ratio), mean + stdev * stdev / loss};
}

double convexity_premium(double mean, double stdev) {
    if (!(mean < 1.0)) throw DomainError("mean recovery must be < 1");
    return stdev * stdev / (1.0 - mean);
}

double fair_dds_spread(double s_cds, double r_dds, double mean, double stdev) {
    if (!(mean < 1.0)) throw DomainError("mean recovery must be < 1");
    if (!(r_dds < 1.0)) throw DomainError("DDS contractual recovery must be < 1");
    const double loss = 1.0 - mean;
    return s_cds * (1.0 - r_dds) / loss * (1.0 + stdev * stdev / (loss * loss));
}

double dds_gamma(double mean) {
    if (!(mean < 1.0)) throw DomainError("mean recovery must be < 1");
    return 2.0 / ((1.0 - mean) * (1.0 - mean));
}

namespace {

struct ChunkStats {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;  // sum of squared deviations
};

ChunkStats run_chunk(const TruncatedNormal& law, const std::function<double(double)>& g,
                     std::uint64_t seed, std::uint64_t chunk, std::size_t n) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 engine(seq);
    ChunkStats st;
    for (std::size_t i = 0; i < n; ++i) {
        // 53-bit uniform on the open interval (0, 1)
        const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
        const double x = g(law.quantile(u));
        ++st.n;
        const double delta = x - st.mean;
        st.mean += delta / static_cast<double>(st.n);
        st.m2 += delta * (x - st.mean);
    }
    return st;
}

ChunkStats merge(const ChunkStats& a, const ChunkStats& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    ChunkStats out;
    out.n = a.n + b.n;
    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double delta = b.mean - a.mean;
    out.mean = a.mean + delta * nb / static_cast<double>(out.n);
    out.m2 = a.m2 + b.m2 + delta * delta * na * nb / static_cast<double>(out.n);
    return out;
}

}  // namespace

MonteCarloEstimate monte_carlo_expectation(const TruncatedNormal& law,
                                           const std::function<double(double)>& g,
                                           const MonteCarloSettings& settings) {
    if (settings.draws < 2) throw DomainError("Monte Carlo needs at least two draws");
    if (settings.chunk_size == 0) throw DomainError("Monte Carlo chunk size must be > 0");
    const std::size_t chunks = (settings.draws + settings.chunk_size - 1) / settings.chunk_size;
    std::vector<ChunkStats> stats(chunks);
    auto work = [&](std::size_t k) {
        const std::size_t begin = k * settings.chunk_size;
        const std::size_t n = std::min(settings.chunk_size, settings.draws - begin);
        stats[k] = run_chunk(law, g, settings.seed, k, n);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(settings.workers,
                                                             static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (std::size_t k = 0; k < chunks; ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < chunks; k += workers) work(k);
            });
        for (auto& t : pool) t.join();
    }

    ChunkStats total;
    for (const auto& s : stats) total = merge(total, s);
    const double n = static_cast<double>(total.n);
    const double variance = total.m2 / (n - 1.0);
    return {total.mean, std::sqrt(variance / n), total.n};
}

MonteCarloEstimate fair_rate_monte_carlo(const RecoveryDistribution& dist,
                                         const MonteCarloSettings& settings) {
    const auto inv = monte_carlo_expectation(
        dist.law(), [](double r) { return 1.0 / (1.0 - r); }, settings);
    // d/dm (1 - 1/m) = 1/m^2
    return {1.0 - 1.0 / inv.value, inv.standard_error / (inv.value * inv.value), inv.draws};
}

ParConsistency par_consistency_residual(const DiscountCurve& dc, const HazardCurve& hc_short,
                                        const HazardCurve& hc_long, const ScenarioSet& scenarios,
                                        double r_swap_flat, double u, double maturity,
                                        std::optional<double> r_swap_short) {
    if (!(u > 0.0 && u < maturity))
        throw DomainError("intermediate time must satisfy 0 < u < maturity");
    if (hc_short.max_time() < u)
        throw DomainError("short hazard curve does not reach the intermediate time");
    if (hc_long.max_time() < maturity)
        throw DomainError("long hazard curve does not reach the maturity");
    if (dc.max_time() < maturity) throw DomainError("discount curve does not reach the maturity");
    if (!(r_swap_flat < 1.0)) throw DomainError("recovery swap rate must be < 1");

    const double r_short = r_swap_short.value_or(r_swap_flat);
    if (!(r_short < 1.0)) throw DomainError("short-tenor recovery swap rate must be < 1");

    ParConsistency out;
    // seasoned swap PV to maturity u on the short curve
    const double s_short = par_cds_spread(dc, hc_short, r_short, u);
    out.short_leg =
        (r_short - r_swap_flat) / (1.0 - r_short) * s_short * risky_annuity(dc, hc_short, u);

    // Z(0,u) * RPV01(u,T) given survival to u, frozen at the base curve
    const double forward_annuity =
        leg_integrals(dc, hc_long, u, maturity).annuity / hc_long.survival_probability(u);
    double scenario_sum = 0.0;
    for (const auto& s : scenarios.scenarios())
        scenario_sum += s.weight * (s.recovery - r_swap_flat) / (1.0 - s.recovery) * s.cds_spread;
    out.residual_leg = forward_annuity * scenario_sum;
    return out;
}

double FairRateSweep::spread() const {
    if (rates.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
    return *hi - *lo;
}

FairRateSweep sweep_fair_rate(std::span<const double> times,
                              const std::function<ScenarioSet(double)>& scenarios_at) {
    FairRateSweep out;
    for (const double u : times) {
        out.times.push_back(u);
        out.rates.push_back(fair_rate_scenarios(scenarios_at(u)));
    }
    return out;
}

}  // namespace rswap
