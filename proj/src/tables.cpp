#include "biblio/tables.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace biblio {

std::string format_number(double value, std::optional<int> precision) {
    if (value == 0.0) value = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::to_chars_result res;
    if (precision) {
        res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, *precision);
    } else {
        res = std::to_chars(buf, buf + sizeof buf, value);
    }
    if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split_tabs(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        fields.emplace_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return fields;
}

void write_indicator_table(std::ostream& out, const std::vector<AuthorIndicators>& rows,
                           std::optional<int> precision) {
    out << "author_id";
    for (auto name : kIndicatorNames) out << '\t' << name;
    out << '\n';
    for (const auto& row : rows) {
        out << row.author_id;
        for (double v : row.values.values()) out << '\t' << format_number(v, precision);
        out << '\n';
    }
}

std::vector<AuthorIndicators> read_indicator_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("indicator table is empty (no header)");
    const auto header = split_tabs(line);
    if (header.size() != kIndicatorCount + 1 || header[0] != "author_id") {
        throw std::invalid_argument("indicator table header must be author_id followed by the 17 indicators");
    }
    for (std::size_t k = 0; k < kIndicatorCount; ++k) {
        if (header[k + 1] != kIndicatorNames[k]) {
            throw std::invalid_argument("indicator table column " + std::to_string(k + 2) + " should be " +
                                        std::string(kIndicatorNames[k]) + ", found " + header[k + 1]);
        }
    }

    std::vector<AuthorIndicators> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_tabs(line);
        if (fields.size() != kIndicatorCount + 1) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(kIndicatorCount + 1) + " fields");
        }
        std::array<double, kIndicatorCount> values{};
        try {
            for (std::size_t k = 0; k < kIndicatorCount; ++k) values[k] = parse_number(fields[k + 1]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
        rows.push_back({fields[0], IndicatorVector::from_values(values)});
    }
    return rows;
}

void write_comparison_table(std::ostream& out, const ComparisonTable& table, std::optional<int> precision) {
    out << "indicator\tstars_median\tcontrol_median\tp\tR\n";
    for (const auto& row : table.rows) {
        out << row.indicator << '\t' << format_number(row.median_stars, precision) << '\t'
            << format_number(row.median_control, precision) << '\t' << format_number(row.p, precision) << '\t'
            << row.rank << '\n';
    }
}

void write_boxplot_table(std::ostream& out, const std::vector<BoxplotSummary>& rows, std::optional<int> precision) {
    out << "cohort\tindicator\tmedian\tq1\tq3\twhisker_low\twhisker_high\toutliers\n";
    for (const auto& row : rows) {
        out << row.cohort << '\t' << row.indicator << '\t' << format_number(row.median, precision) << '\t'
            << format_number(row.q1, precision) << '\t' << format_number(row.q3, precision) << '\t'
            << format_number(row.whisker_low, precision) << '\t' << format_number(row.whisker_high, precision)
            << '\t';
        for (std::size_t i = 0; i < row.outliers.size(); ++i) {
            if (i > 0) out << ';';
            out << format_number(row.outliers[i], precision);
        }
        out << '\n';
    }
}

}  // namespace biblio
