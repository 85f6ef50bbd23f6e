#include "rswap/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "rswap/calibration.hpp"
#include "rswap/convexity.hpp"
#include "rswap/errors.hpp"
#include "rswap/format.hpp"
#include "rswap/market_io.hpp"
#include "rswap/pricing.hpp"
#include "rswap/replication.hpp"

namespace rswap::cli {

namespace {

constexpr double pct = 100.0;
constexpr double bp = 10000.0;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError({"cannot open " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
    std::istringstream in(read_file(path));
    return parse(in);
}

DiscountCurve discount_curve(const std::string& path, double flat_rate_pct, double horizon) {
    if (!path.empty()) return parse_file(path, parse_discount_curve);
    return DiscountCurve::flat(flat_rate_pct / pct, horizon);
}

nlohmann::ordered_json jnum(double v, int precision) {
    if (precision < 0) return v;
    const double p = std::pow(10.0, precision);
    return std::round(v * p) / p;
}

struct Common {
    int round = -1;
    std::string format = "table";
};

void add_common(CLI::App* sub, Common& c, std::vector<std::string> formats) {
    sub->add_option("--round", c.round, "Decimals shown in output (default: full precision)")
        ->check(CLI::Range(0, 17));
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember(std::move(formats)));
}

std::string key_value_table(const std::vector<std::pair<std::string, std::string>>& items) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : items) rows.push_back({k, v});
    return format_table({"Quantity", "Value"}, rows);
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
    Common common{-1, "json"};
    std::string quotes;
    std::string discount;
    double rate_pct = 0.0;
    bool extrapolate = false;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
    const auto quotes = parse_file(a.quotes, parse_cds_quotes);
    const double horizon = quotes.empty() ? 1.0 : quotes.back().tenor;
    const auto dc = discount_curve(a.discount, a.rate_pct, horizon);
    CalibrationSettings settings;
    settings.extrapolation = a.extrapolate ? Extrapolation::flat : Extrapolation::none;
    const auto report = bootstrap_hazard(quotes, dc, settings);
    if (a.common.format == "json") {
        out << hazard_curve_to_json(report, a.common.round);
        return ok;
    }
    std::vector<std::vector<std::string>> rows;
    const auto segs = report.hazard_curve.segments();
    for (std::size_t i = 0; i < segs.size(); ++i)
        rows.push_back({format_number(segs[i].end_time), format_number(segs[i].hazard, a.common.round),
                        format_number(report.residuals[i], a.common.round),
                        std::to_string(report.iterations[i])});
    out << format_table({"End (y)", "Hazard (/y)", "Residual", "Iterations"}, rows);
    return ok;
}

// ----------------------------------------------------------------- price-rs

struct PriceArgs {
    Common common;
    std::string curve;
    std::string quotes;
    std::string discount;
    double rate_pct = 0.0;
    std::string direction = "receiver";
    double swap_rate_pct = 0.0;
    double maturity = 0.0;
    double notional = 1.0;
    double market_rate_pct = 0.0;
    double cds_spread_bp = 0.0;
    bool no_verify = false;
};

int cmd_price(const PriceArgs& a, std::ostream& out) {
    HazardCurve hc;
    if (!a.curve.empty()) {
        hc = hazard_curve_from_json(read_file(a.curve));
    } else {
        const auto quotes = parse_file(a.quotes, parse_cds_quotes);
        const double horizon = quotes.empty() ? a.maturity : std::max(a.maturity, quotes.back().tenor);
        hc = bootstrap_hazard(quotes, discount_curve(a.discount, a.rate_pct, horizon)).hazard_curve;
    }
    const auto dc = discount_curve(a.discount, a.rate_pct, std::max(a.maturity, 1e-9));

    RecoverySwapTrade trade;
    trade.direction = a.direction == "payer" ? Direction::payer : Direction::receiver;
    trade.swap_rate = a.swap_rate_pct / pct;
    trade.maturity = a.maturity;
    trade.notional = a.notional;
    const double r_mkt = a.market_rate_pct / pct;
    const double s_cds = a.cds_spread_bp / bp;

    RecoverySwapPvOptions options;
    options.verify_calibration = !a.no_verify;
    const double pv = recovery_swap_pv(dc, hc, trade, r_mkt, s_cds, options);
    const double pv_direct = recovery_swap_pv_direct(dc, hc, trade, r_mkt);
    const double rpv01 = risky_annuity(dc, hc, trade.maturity);
    const int r = a.common.round;

    if (a.common.format == "json") {
        nlohmann::ordered_json doc{{"direction", a.direction},
                           {"pv", jnum(pv, r)},
                           {"pv_protection_leg", jnum(pv_direct, r)},
                           {"risky_annuity", jnum(rpv01, r)}};
        out << doc.dump(2) << '\n';
        return ok;
    }
    out << key_value_table({{"Direction", a.direction},
                            {"PV", format_number(pv, r)},
                            {"PV via protection leg", format_number(pv_direct, r)},
                            {"Risky annuity (y)", format_number(rpv01, r)}});
    return ok;
}

// --------------------------------------------------------------------- scan

struct ScanArgs {
    Common common;
    std::string quotes;
    double threshold_pp = 1.0;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
    const auto rows = parse_file(a.quotes, parse_quotes);
    const auto report = scan(rows, a.threshold_pp / pct);
    if (a.common.format == "csv") out << scan_to_csv(report, a.common.round);
    else if (a.common.format == "json") out << scan_to_json(report, a.common.round);
    else out << scan_to_table(report, a.common.round);
    return report.any_flag() ? arbitrage : ok;
}

// ---------------------------------------------------------------- replicate

struct ReplicateArgs {
    Common common;
    double swap_rate_pct = 0.0;
    double dds_recovery_pct = 0.0;
    double cds_spread_bp = 0.0;
};

int cmd_replicate(const ReplicateArgs& a, std::ostream& out) {
    const auto report =
        verify_replication(a.swap_rate_pct / pct, a.dds_recovery_pct / pct, a.cds_spread_bp / bp);
    const int r = a.common.round;
    if (a.common.format == "json") {
        const auto& p = report.portfolio;
        nlohmann::ordered_json doc{{"hedge_cds", jnum(p.hedge.cds, r)},
                           {"hedge_dds", jnum(p.hedge.dds, r)},
                           {"s_cds", jnum(p.s_cds, r)},
                           {"s_dds", jnum(p.s_dds, r)},
                           {"net_premium", jnum(report.net_premium, r)},
                           {"max_default_cash_flow", jnum(report.max_default_cash_flow, r)},
                           {"recovery_coefficient", jnum(report.recovery_coefficient, r)},
                           {"ok", report.ok()}};
        out << doc.dump(2) << '\n';
    } else {
        out << format_replication_table(report, r);
    }
    return report.ok() ? ok : check_failed;
}

// ---------------------------------------------------------------- fair-rate

struct FairRateArgs {
    Common common;
    double mean_pct = 40.0;
    double stdev_pct = 15.0;
    double lo_pct = 0.0;
    double hi_pct = 99.0;
    std::size_t draws = 1'000'000;
    std::uint64_t seed = MonteCarloSettings{}.seed;
    unsigned workers = 1;
};

int cmd_fair_rate(const FairRateArgs& a, std::ostream& out) {
    RecoveryDistribution dist{a.mean_pct / pct, a.stdev_pct / pct, a.lo_pct / pct, a.hi_pct / pct};
    dist.validate();
    const auto exact = fair_rate_exact(dist);
    const auto approx = fair_rate_approx(dist.mean, dist.stdev);
    const double premium = convexity_premium(dist.mean, dist.stdev);
    MonteCarloSettings mc;
    mc.draws = a.draws;
    mc.seed = a.seed;
    mc.workers = a.workers;
    const auto sim = fair_rate_monte_carlo(dist, mc);
    const double truncated_mean = dist.law().mean();
    const int r = a.common.round;

    if (a.common.format == "json") {
        nlohmann::ordered_json doc{{"mean", dist.mean},
                           {"stdev", dist.stdev},
                           {"support", {dist.lo, dist.hi}},
                           {"truncated_mean", jnum(truncated_mean, r)},
                           {"fair_rate_exact", jnum(exact.value, r)},
                           {"quadrature_order", exact.order},
                           {"fair_rate_approx_intermediate", jnum(approx.intermediate, r)},
                           {"fair_rate_approx", jnum(approx.final, r)},
                           {"convexity_premium", jnum(premium, r)},
                           {"monte_carlo",
                            {{"fair_rate", jnum(sim.value, r)},
                             {"standard_error", jnum(sim.standard_error, r)},
                             {"draws", sim.draws},
                             {"seed", a.seed}}}};
        out << doc.dump(2) << '\n';
        return ok;
    }
    auto p = [r](double x) { return format_number(x * pct, r); };
    out << key_value_table({
        {"Mean recovery (%)", p(dist.mean)},
        {"Recovery stdev (%)", p(dist.stdev)},
        {"Support (%)", p(dist.lo) + " .. " + p(dist.hi)},
        {"Truncated-law mean (%)", p(truncated_mean)},
        {"Fair rate, exact (%)", p(exact.value)},
        {"Quadrature order", std::to_string(exact.order)},
        {"Fair rate, approx intermediate (%)", p(approx.intermediate)},
        {"Fair rate, approx (%)", p(approx.final)},
        {"Convexity premium (pp)", p(premium)},
        {"Fair rate, Monte Carlo (%)", p(sim.value)},
        {"Monte Carlo std error (pp)", p(sim.standard_error)},
        {"Monte Carlo draws", std::to_string(sim.draws)},
        {"Monte Carlo seed", std::to_string(a.seed)},
    });
    return ok;
}

// ----------------------------------------------------------------- fair-dds

struct FairDdsArgs {
    Common common;
    double cds_spread_bp = 0.0;
    double dds_recovery_pct = 0.0;
    double mean_pct = 40.0;
    double stdev_pct = 15.0;
};

int cmd_fair_dds(const FairDdsArgs& a, std::ostream& out) {
    const double s = a.cds_spread_bp / bp;
    const double rd = a.dds_recovery_pct / pct;
    const double m = a.mean_pct / pct;
    const double sd = a.stdev_pct / pct;
    const double fair = fair_dds_spread(s, rd, m, sd);
    const double no_premium = dds_spread_from_cds(s, m, rd);
    const double gamma = dds_gamma(m);
    const int r = a.common.round;
    if (a.common.format == "json") {
        nlohmann::ordered_json doc{{"fair_dds_spread", jnum(fair, r)},
                           {"no_premium_dds_spread", jnum(no_premium, r)},
                           {"dds_gamma", jnum(gamma, r)}};
        out << doc.dump(2) << '\n';
        return ok;
    }
    out << key_value_table({{"Fair DDS spread (bp)", format_number(fair * bp, r)},
                            {"No-premium DDS spread (bp)", format_number(no_premium * bp, r)},
                            {"DDS gamma", format_number(gamma, r)}});
    return ok;
}

// ------------------------------------------------------------ scenario-rate

struct ScenarioArgs {
    Common common;
    std::string scenarios;
    double u = 1.0;
    double maturity = 5.0;
    double rate_pct = 0.0;
    std::optional<double> hazard;
    std::optional<double> fixed_rate_pct;
};

int cmd_scenario_rate(const ScenarioArgs& a, std::ostream& out) {
    const auto set = parse_file(a.scenarios, parse_scenarios);
    const double fair = fair_rate_scenarios(set);

    double h = 0.0;
    if (a.hazard) {
        h = *a.hazard;
    } else {
        // base case: scenario-averaged zero-recovery digital spread
        for (const auto& s : set.scenarios()) h += s.weight * s.cds_spread / (1.0 - s.recovery);
    }
    const auto dc = DiscountCurve::flat(a.rate_pct / pct, a.maturity);
    const auto hc_short = HazardCurve::flat(h, a.u);
    const auto hc_long = HazardCurve::flat(h, a.maturity);
    const auto at_fair = par_consistency_residual(dc, hc_short, hc_long, set, fair, a.u, a.maturity);
    std::optional<ParConsistency> at_fixed;
    if (a.fixed_rate_pct)
        at_fixed = par_consistency_residual(dc, hc_short, hc_long, set, *a.fixed_rate_pct / pct,
                                            a.u, a.maturity);
    const int r = a.common.round;

    if (a.common.format == "json") {
        nlohmann::ordered_json doc{{"fair_rate", jnum(fair, r)},
                           {"expected_recovery", jnum(set.expected_recovery(), r)},
                           {"hazard", h},
                           {"u", a.u},
                           {"maturity", a.maturity},
                           {"residual_at_fair_rate", jnum(at_fair.total(), r)}};
        if (at_fixed) {
            doc["fixed_rate"] = *a.fixed_rate_pct / pct;
            doc["residual_at_fixed_rate"] = jnum(at_fixed->total(), r);
        }
        out << doc.dump(2) << '\n';
        return ok;
    }
    std::vector<std::pair<std::string, std::string>> items{
        {"Scenarios", std::to_string(set.size())},
        {"Fair recovery swap rate (%)", format_number(fair * pct, r)},
        {"Expected recovery (%)", format_number(set.expected_recovery() * pct, r)},
        {"Premium over expectation (pp)", format_number((fair - set.expected_recovery()) * pct, r)},
        {"Par residual at fair rate", format_number(at_fair.total(), r)},
    };
    if (at_fixed) {
        items.push_back({"Fixed rate (%)", format_number(*a.fixed_rate_pct, r)});
        items.push_back({"Par residual at fixed rate", format_number(at_fixed->total(), r)});
    }
    out << key_value_table(items);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recovery swap, digital default swap and CDS pricing toolkit", "rswap"};
    app.require_subcommand(1);

    CalibrateArgs cal;
    auto* s_cal = app.add_subcommand("calibrate", "Bootstrap a hazard curve from CDS quotes");
    s_cal->add_option("--quotes", cal.quotes, "CSV tenor_years,cds_spread_bp,recovery_swap_rate_pct")
        ->required();
    s_cal->add_option("--discount", cal.discount, "CSV time_years,discount_factor");
    s_cal->add_option("--rate", cal.rate_pct, "Flat riskless rate (%) when no discount file");
    s_cal->add_flag("--extrapolate", cal.extrapolate, "Extend the last hazard flat");
    add_common(s_cal, cal.common, {"json", "table"});

    PriceArgs price;
    auto* s_price = app.add_subcommand("price-rs", "Mark-to-market of a seasoned recovery swap");
    auto* curve_opt = s_price->add_option("--curve", price.curve, "Hazard curve JSON from calibrate");
    auto* quotes_opt = s_price->add_option("--quotes", price.quotes, "CDS quote CSV to calibrate");
    curve_opt->excludes(quotes_opt);
    s_price->add_option("--discount", price.discount, "CSV time_years,discount_factor");
    s_price->add_option("--rate", price.rate_pct, "Flat riskless rate (%)");
    s_price->add_option("--direction", price.direction, "payer or receiver of realized recovery")
        ->check(CLI::IsMember({"payer", "receiver"}));
    s_price->add_option("--swap-rate", price.swap_rate_pct, "Contract recovery swap rate (%)")
        ->required();
    s_price->add_option("--maturity", price.maturity, "Remaining maturity (years)")->required();
    s_price->add_option("--notional", price.notional, "Notional");
    s_price->add_option("--market-rate", price.market_rate_pct, "Market recovery swap rate (%)")
        ->required();
    s_price->add_option("--cds-spread", price.cds_spread_bp, "Market CDS spread (bp)")->required();
    s_price->add_flag("--no-verify", price.no_verify, "Skip the curve calibration check");
    add_common(s_price, price.common, {"table", "json"});

    ScanArgs sc;
    auto* s_scan = app.add_subcommand("scan", "Implied recovery and arbitrage scan of quotes");
    auto* s_implied = app.add_subcommand("implied-recovery", "Alias of scan");
    for (auto* s : {s_scan, s_implied}) {
        s->add_option("quotes", sc.quotes, "Quote CSV")->required();
        s->add_option("--threshold", sc.threshold_pp, "Gap threshold (pp)")
            ->check(CLI::NonNegativeNumber);
        add_common(s, sc.common, {"table", "csv", "json"});
    }

    ReplicateArgs rep;
    auto* s_rep = app.add_subcommand("replicate", "Replication portfolio and zero-cash-flow check");
    s_rep->add_option("--swap-rate", rep.swap_rate_pct, "Recovery swap rate (%)")->required();
    s_rep->add_option("--dds-recovery", rep.dds_recovery_pct, "DDS contractual recovery (%)");
    s_rep->add_option("--cds-spread", rep.cds_spread_bp, "CDS spread (bp)")->required();
    add_common(s_rep, rep.common, {"table", "json"});

    FairRateArgs fr;
    auto* s_fr = app.add_subcommand("fair-rate", "Fair recovery swap rate under recovery uncertainty");
    s_fr->add_option("--mean", fr.mean_pct, "Mean future recovery (%)")->required();
    s_fr->add_option("--stdev", fr.stdev_pct, "Stdev of future recovery (pp)")->required();
    s_fr->add_option("--lo", fr.lo_pct, "Support lower bound (%)");
    s_fr->add_option("--hi", fr.hi_pct, "Support upper bound (%), at most 99");
    s_fr->add_option("--draws", fr.draws, "Monte Carlo draws");
    s_fr->add_option("--seed", fr.seed, "Monte Carlo seed");
    s_fr->add_option("--workers", fr.workers, "Monte Carlo worker threads");
    add_common(s_fr, fr.common, {"table", "json"});

    FairDdsArgs fd;
    auto* s_fd = app.add_subcommand("fair-dds", "DDS spread including the convexity premium");
    s_fd->add_option("--cds-spread", fd.cds_spread_bp, "CDS spread (bp)")->required();
    s_fd->add_option("--dds-recovery", fd.dds_recovery_pct, "DDS contractual recovery (%)");
    s_fd->add_option("--mean", fd.mean_pct, "Mean recovery (%)")->required();
    s_fd->add_option("--stdev", fd.stdev_pct, "Recovery stdev (pp)")->required();
    add_common(s_fd, fd.common, {"table", "json"});

    ScenarioArgs sr;
    auto* s_sr = app.add_subcommand("scenario-rate", "Fair rate and par residual from scenarios");
    s_sr->add_option("scenarios", sr.scenarios, "CSV weight,recovery_pct,cds_spread_bp")->required();
    s_sr->add_option("--u", sr.u, "Intermediate time (years)");
    s_sr->add_option("--maturity", sr.maturity, "Swap maturity (years)");
    s_sr->add_option("--rate", sr.rate_pct, "Flat riskless rate (%)");
    s_sr->add_option("--hazard", sr.hazard, "Flat base hazard (per annum, decimal)");
    s_sr->add_option("--fixed-rate", sr.fixed_rate_pct, "Also evaluate the residual at this rate (%)");
    add_common(s_sr, sr.common, {"table", "json"});

    std::vector<const char*> argv{"rswap"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return usage;
    }

    try {
        if (*s_cal) return cmd_calibrate(cal, out);
        if (*s_price) {
            if (price.curve.empty() && price.quotes.empty()) {
                err << "price-rs needs --curve or --quotes\n" << s_price->help();
                return usage;
            }
            return cmd_price(price, out);
        }
        if (*s_scan || *s_implied) return cmd_scan(sc, out);
        if (*s_rep) return cmd_replicate(rep, out);
        if (*s_fr) return cmd_fair_rate(fr, out);
        if (*s_fd) return cmd_fair_dds(fd, out);
        if (*s_sr) return cmd_scenario_rate(sr, out);
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return input_error;
    } catch (const CalibrationError& e) {
        err << "calibration failed: " << e.what() << '\n';
        return input_error;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return input_error;
    }
    return usage;
}

}  // namespace rswap::cli
