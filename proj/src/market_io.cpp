#include "rswap/market_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "rswap/errors.hpp"
#include "rswap/format.hpp"
#include "rswap/pricing.hpp"

namespace rswap {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
    std::string out = "parse error";
    for (const auto& p : problems) out += "\n  " + p;
    return out;
}

}  // namespace

ParseError::ParseError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Parsed CSV body: (1-based file line number, fields).
struct CsvRecord {
    std::size_t line;
    std::vector<std::string> fields;
};

std::vector<CsvRecord> read_csv(std::istream& in, const std::string& expected_header) {
    std::string line;
    std::size_t number = 0;
    bool have_header = false;
    std::vector<CsvRecord> out;
    while (std::getline(in, line)) {
        ++number;
        if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        if (!have_header) {
            auto cols = split(line);
            std::string joined;
            for (std::size_t i = 0; i < cols.size(); ++i) joined += (i ? "," : "") + cols[i];
            if (joined != expected_header)
                throw ParseError({"line " + std::to_string(number) + ": expected header '" +
                                  expected_header + "', found '" + trim(line) + "'"});
            have_header = true;
            continue;
        }
        out.push_back({number, split(line)});
    }
    if (!have_header) throw ParseError({"missing header '" + expected_header + "'"});
    return out;
}

std::optional<double> to_double(const std::string& field) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (first != last && *first == '+') ++first;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc{} || r.ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

/// Collects row diagnostics while parsing a file.
class RowChecker {
public:
    explicit RowChecker(std::size_t line) : line_(line) {}

    std::optional<double> number(const std::string& field, const char* column) {
        auto v = to_double(field);
        if (!v) fail(std::string(column) + " is not a number ('" + field + "')");
        return v;
    }

    void fail(const std::string& what) {
        problems_.push_back("line " + std::to_string(line_) + ": " + what);
    }

    std::vector<std::string>& problems() { return problems_; }

private:
    std::size_t line_;
    std::vector<std::string> problems_;
};

constexpr double percent = 100.0;
constexpr double basis_points = 10000.0;

/// Shortest decimal text t with from_chars(t) / scale == value.
std::string decimal_text(double value, double scale) {
    double candidate = value * scale;
    for (int i = 0; i < 4; ++i) candidate = std::nextafter(candidate, -HUGE_VAL);
    std::string best;
    for (int i = 0; i < 9; ++i) {
        const std::string text = format_number(candidate);
        if (to_double(text).value_or(NAN) / scale == value &&
            (best.empty() || text.size() < best.size()))
            best = text;
        candidate = std::nextafter(candidate, HUGE_VAL);
    }
    if (best.empty()) throw NumericError("no decimal text reproduces " + format_number(value));
    return best;
}

}  // namespace

std::vector<QuoteRow> parse_quotes(std::istream& in) {
    const auto records = read_csv(
        in, "ticker,recovery_swap_rate_pct,cds_spread_bp,dds_spread_bp,dds_contractual_recovery_pct");
    std::vector<QuoteRow> out;
    std::vector<std::string> problems;
    std::set<std::string> seen;
    for (const auto& rec : records) {
        RowChecker check(rec.line);
        const auto& f = rec.fields;
        if (f.size() != 5) {
            check.fail("expected 5 fields, found " + std::to_string(f.size()));
        } else {
            QuoteRow row;
            row.ticker = f[0];
            if (row.ticker.empty()) check.fail("ticker is empty");
            else if (!seen.insert(row.ticker).second) check.fail("duplicate ticker " + row.ticker);

            if (auto r = check.number(f[1], "recovery_swap_rate_pct")) {
                if (!(*r >= 0.0 && *r < 100.0)) check.fail("recovery swap rate must lie in [0, 100)%");
                row.recovery_swap_rate = *r / percent;
            }
            if (auto s = check.number(f[2], "cds_spread_bp")) {
                if (*s < 0.0) check.fail("CDS spread must be >= 0");
                row.cds_spread = *s / basis_points;
            }
            if (!f[3].empty()) {
                if (auto d = check.number(f[3], "dds_spread_bp")) {
                    if (*d < 0.0) check.fail("DDS spread must be >= 0");
                    row.dds_spread = *d / basis_points;
                }
            }
            if (!f[4].empty()) {
                if (auto c = check.number(f[4], "dds_contractual_recovery_pct")) {
                    if (!(*c >= 0.0 && *c < 100.0))
                        check.fail("DDS contractual recovery must lie in [0, 100)%");
                    row.dds_contractual_recovery = *c / percent;
                }
            }
            if (check.problems().empty()) out.push_back(std::move(row));
        }
        problems.insert(problems.end(), check.problems().begin(), check.problems().end());
    }
    if (!problems.empty()) throw ParseError(std::move(problems));
    return out;
}

std::string serialize_quotes(std::span<const QuoteRow> rows) {
    std::string out =
        "ticker,recovery_swap_rate_pct,cds_spread_bp,dds_spread_bp,dds_contractual_recovery_pct\n";
    for (const auto& r : rows) {
        out += r.ticker + ',' + decimal_text(r.recovery_swap_rate, percent) + ',' +
               decimal_text(r.cds_spread, basis_points) + ',' +
               (r.dds_spread ? decimal_text(*r.dds_spread, basis_points) : std::string()) + ',' +
               decimal_text(r.dds_contractual_recovery, percent) + '\n';
    }
    return out;
}

std::vector<CdsQuote> parse_cds_quotes(std::istream& in) {
    const auto records = read_csv(in, "tenor_years,cds_spread_bp,recovery_swap_rate_pct");
    std::vector<CdsQuote> out;
    std::vector<std::string> problems;
    double previous = 0.0;
    for (const auto& rec : records) {
        RowChecker check(rec.line);
        const auto& f = rec.fields;
        if (f.size() != 3) {
            check.fail("expected 3 fields, found " + std::to_string(f.size()));
        } else if (f[2].empty()) {
            check.fail("recovery swap rate is required at every tenor");
        } else {
            const auto tenor = check.number(f[0], "tenor_years");
            const auto spread = check.number(f[1], "cds_spread_bp");
            const auto recovery = check.number(f[2], "recovery_swap_rate_pct");
            if (tenor && !(*tenor > previous)) check.fail("tenors must be positive and strictly increasing");
            if (spread && *spread < 0.0) check.fail("CDS spread must be >= 0");
            if (recovery && !(*recovery >= 0.0 && *recovery < 100.0))
                check.fail("recovery swap rate must lie in [0, 100)%");
            if (tenor) previous = *tenor;
            if (check.problems().empty())
                out.push_back({*tenor, *spread / basis_points, *recovery / percent});
        }
        problems.insert(problems.end(), check.problems().begin(), check.problems().end());
    }
    if (!problems.empty()) throw ParseError(std::move(problems));
    return out;
}

DiscountCurve parse_discount_curve(std::istream& in) {
    const auto records = read_csv(in, "time_years,discount_factor");
    std::vector<DiscountPillar> pillars;
    std::vector<std::string> problems;
    for (const auto& rec : records) {
        RowChecker check(rec.line);
        const auto& f = rec.fields;
        if (f.size() != 2) {
            check.fail("expected 2 fields, found " + std::to_string(f.size()));
        } else {
            const auto t = check.number(f[0], "time_years");
            const auto df = check.number(f[1], "discount_factor");
            if (t && df) {
                const double prev = pillars.empty() ? -1.0 : pillars.back().time;
                if (!(*t > prev) || *t < 0.0)
                    check.fail("times must be non-negative and strictly increasing");
                else if (!(*df > 0.0 && *df <= 1.0))
                    check.fail("discount factor must lie in (0, 1]");
                else if (*t == 0.0 && *df != 1.0)
                    check.fail("discount factor at time 0 must be 1");
                else
                    pillars.push_back({*t, *df});
            }
        }
        problems.insert(problems.end(), check.problems().begin(), check.problems().end());
    }
    if (!problems.empty()) throw ParseError(std::move(problems));
    if (pillars.empty() || pillars.front().time != 0.0) pillars.insert(pillars.begin(), {0.0, 1.0});
    try {
        return DiscountCurve(std::move(pillars));
    } catch (const DomainError& e) {
        throw ParseError({e.what()});
    }
}

ScenarioSet parse_scenarios(std::istream& in) {
    const auto records = read_csv(in, "weight,recovery_pct,cds_spread_bp");
    std::vector<Scenario> out;
    std::vector<std::string> problems;
    for (const auto& rec : records) {
        RowChecker check(rec.line);
        const auto& f = rec.fields;
        if (f.size() != 3) {
            check.fail("expected 3 fields, found " + std::to_string(f.size()));
        } else {
            const auto w = check.number(f[0], "weight");
            const auto r = check.number(f[1], "recovery_pct");
            const auto s = check.number(f[2], "cds_spread_bp");
            if (w && *w < 0.0) check.fail("weight must be >= 0");
            if (r && !(*r >= 0.0 && *r < 100.0)) check.fail("recovery must lie in [0, 100)%");
            if (s && *s < 0.0) check.fail("CDS spread must be >= 0");
            if (check.problems().empty()) out.push_back({*w, *r / percent, *s / basis_points});
        }
        problems.insert(problems.end(), check.problems().begin(), check.problems().end());
    }
    if (!problems.empty()) throw ParseError(std::move(problems));
    try {
        return ScenarioSet(std::move(out));
    } catch (const DomainError& e) {
        throw ParseError({e.what()});
    }
}

bool ScanReport::any_flag() const {
    for (const auto& r : rows)
        if (r.arbitrage_flag) return true;
    return false;
}

ScanReport scan(std::span<const QuoteRow> rows, double gap_threshold) {
    ScanReport report;
    report.gap_threshold = gap_threshold;
    report.rows.reserve(rows.size());
    for (const auto& q : rows) {
        ScanRow row;
        row.ticker = q.ticker;
        row.quoted_recovery = q.recovery_swap_rate;
        row.theoretical_dds =
            dds_spread_from_cds(q.cds_spread, q.recovery_swap_rate, q.dds_contractual_recovery);
        if (q.dds_spread) {
            // quoted DDS restated at zero contractual recovery
            const double dds_zero = *q.dds_spread / (1.0 - q.dds_contractual_recovery);
            try {
                row.implied_recovery = implied_recovery(q.cds_spread, dds_zero);
                row.gap = *row.implied_recovery - row.quoted_recovery;
                if (std::abs(*row.gap) > gap_threshold) {
                    row.arbitrage_flag = true;
                    row.diagnostic = "implied recovery deviates from quoted recovery swap rate";
                }
            } catch (const std::domain_error& e) {
                row.arbitrage_flag = true;
                row.diagnostic = e.what();
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

std::string opt_number(const std::optional<double>& v, double scale, int precision) {
    return v ? format_number(*v * scale, precision) : std::string();
}

nlohmann::ordered_json json_number(double v, int precision) {
    if (precision < 0) return v;
    const double p = std::pow(10.0, precision);
    return std::round(v * p) / p;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + '"';
}

}  // namespace

std::string scan_to_csv(const ScanReport& report, int precision) {
    std::string out =
        "ticker,quoted_recovery_pct,implied_recovery_pct,gap_pct,theoretical_dds_bp,arbitrage_flag,"
        "diagnostic\n";
    for (const auto& r : report.rows) {
        out += csv_field(r.ticker) + ',' + format_number(r.quoted_recovery * percent, precision) +
               ',' + opt_number(r.implied_recovery, percent, precision) + ',' +
               opt_number(r.gap, percent, precision) + ',' +
               format_number(r.theoretical_dds * basis_points, precision) + ',' +
               (r.arbitrage_flag ? "true" : "false") + ',' + csv_field(r.diagnostic) + '\n';
    }
    return out;
}

std::string scan_to_json(const ScanReport& report, int precision) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json j;
        j["ticker"] = r.ticker;
        j["quoted_recovery"] = json_number(r.quoted_recovery, precision);
        j["implied_recovery"] =
            r.implied_recovery ? json_number(*r.implied_recovery, precision) : nlohmann::ordered_json();
        j["gap"] = r.gap ? json_number(*r.gap, precision) : nlohmann::ordered_json();
        j["theoretical_dds"] = json_number(r.theoretical_dds, precision);
        j["arbitrage_flag"] = r.arbitrage_flag;
        if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
        rows.push_back(std::move(j));
    }
    nlohmann::ordered_json doc{{"gap_threshold", report.gap_threshold}, {"rows", rows}};
    return doc.dump(2) + '\n';
}

std::string scan_to_table(const ScanReport& report, int precision) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.rows) {
        rows.push_back({r.ticker, format_number(r.quoted_recovery * percent, precision),
                        opt_number(r.implied_recovery, percent, precision),
                        opt_number(r.gap, percent, precision),
                        format_number(r.theoretical_dds * basis_points, precision),
                        r.arbitrage_flag ? "FLAG" : "", r.diagnostic});
    }
    return format_table({"Ticker", "Quoted R (%)", "Implied R (%)", "Gap (pp)",
                         "Theoretical DDS (bp)", "Flag", "Diagnostic"},
                        rows);
}

std::string hazard_curve_to_json(const CalibrationReport& report, int precision) {
    nlohmann::ordered_json segments = nlohmann::ordered_json::array();
    for (const auto& s : report.hazard_curve.segments())
        segments.push_back({{"end_time_years", s.end_time},
                            {"hazard_per_annum", json_number(s.hazard, precision)}});
    nlohmann::ordered_json residuals = nlohmann::ordered_json::array();
    for (double r : report.residuals) residuals.push_back(json_number(r, precision));
    nlohmann::ordered_json doc{{"segments", segments}, {"residuals", residuals}};
    return doc.dump(2) + '\n';
}

HazardCurve hazard_curve_from_json(const std::string& text, Extrapolation extrapolation) {
    try {
        const auto doc = nlohmann::json::parse(text);
        std::vector<HazardSegment> segments;
        for (const auto& s : doc.at("segments"))
            segments.push_back({s.at("end_time_years").get<double>(),
                                s.at("hazard_per_annum").get<double>()});
        return HazardCurve(std::move(segments), extrapolation);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError({std::string("hazard curve JSON: ") + e.what()});
    } catch (const DomainError& e) {
        throw ParseError({std::string("hazard curve JSON: ") + e.what()});
    }
}

}  // namespace rswap
