#include "rswap/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace rswap {

std::string format_number(double value, int precision) {
    if (std::isnan(value)) return "nan";
    std::array<char, 64> buf{};
    std::to_chars_result r{};
    if (precision < 0)
        r = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    else
        r = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed,
                          precision);
    std::string out(buf.data(), r.ptr);
    if (out == "-0" || (out.size() > 1 && out[0] == '-' &&
                        std::all_of(out.begin() + 1, out.end(),
                                    [](char c) { return c == '0' || c == '.'; })))
        out.erase(0, 1);
    return out;
}

std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size(), 0);
    auto fit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    };
    fit(header);
    for (const auto& r : rows) fit(r);

    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t i = 0; i < widths.size(); ++i) {
            const std::string cell = i < row.size() ? row[i] : "";
            line += cell;
            if (i + 1 < widths.size()) line += std::string(widths[i] - cell.size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
}

}  // namespace rswap
