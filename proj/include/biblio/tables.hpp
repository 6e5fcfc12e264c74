#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biblio/indicators.hpp"
#include "biblio/stats.hpp"

namespace biblio {

// All tables are tab-separated with a header row.

/// Shortest decimal that round-trips to the same double, or fixed-point with
/// `precision` decimals when given.
std::string format_number(double value, std::optional<int> precision = std::nullopt);

/// Parses a full decimal field; throws std::invalid_argument on trailing junk.
double parse_number(std::string_view text);

std::vector<std::string> split_tabs(std::string_view line);

struct AuthorIndicators {
    std::string author_id;
    IndicatorVector values;
};

void write_indicator_table(std::ostream& out, const std::vector<AuthorIndicators>& rows,
                           std::optional<int> precision = std::nullopt);
/// Throws std::invalid_argument on a bad header or row (message names the line).
std::vector<AuthorIndicators> read_indicator_table(std::istream& in);

void write_comparison_table(std::ostream& out, const ComparisonTable& table,
                            std::optional<int> precision = std::nullopt);

/// Outliers are written as one field, values joined by ';'.
void write_boxplot_table(std::ostream& out, const std::vector<BoxplotSummary>& rows,
                         std::optional<int> precision = std::nullopt);

}  // namespace biblio
