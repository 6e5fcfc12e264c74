#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/indicators.hpp"

namespace biblio {

enum class Alternative { a_greater, b_greater, two_sided };

struct RankSumResult {
    double statistic = 0;  // rank sum of sample a minus n_a (n_a + 1) / 2
    double p = 1;
};

/// Wilcoxon rank-sum (Mann-Whitney) test. Average ranks for ties, tie-corrected
/// variance and a 0.5 continuity correction in the normal approximation, the
/// same at every sample size. Throws std::invalid_argument for an empty sample.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, Alternative alternative);

/// Upper tail of the standard normal distribution.
double normal_upper_tail(double z);

/// Median with the two central values averaged for even sizes.
double median(std::span<const double> values);

/// Sample quantile by linear interpolation between order statistics
/// (position (n - 1) p in the sorted data). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double p);

struct ComparisonRow {
    std::string indicator;
    double median_stars = 0;
    double median_control = 0;
    double p = 1;
    int rank = 0;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;  // indicator order
};

/// One-sided test per indicator with the alternative "stars greater"; ranks
/// follow ascending p with ties kept in indicator order.
ComparisonTable compare_cohorts(std::span<const IndicatorVector> stars, std::span<const IndicatorVector> control);

struct BoxplotSummary {
    std::string cohort;
    std::string indicator;
    double median = 0;
    double q1 = 0;
    double q3 = 0;
    double whisker_low = 0;
    double whisker_high = 0;
    std::vector<double> outliers;  // ascending
};

/// Summary of log10(x + 1)-transformed values with 1.5 IQR whiskers.
BoxplotSummary boxplot_summary(std::string cohort, std::string indicator, std::span<const double> raw_values);

/// One summary per cohort (in map order) for the named indicator.
std::vector<BoxplotSummary> boxplot_export(const std::map<std::string, std::vector<IndicatorVector>>& cohorts,
                                           std::string_view indicator);

}  // namespace biblio
