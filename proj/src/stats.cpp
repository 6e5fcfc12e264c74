#include "biblio/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biblio {

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, Alternative alternative) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank-sum test needs two non-empty samples");
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;

    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    if (std::any_of(pooled.begin(), pooled.end(), [](double v) { return std::isnan(v); })) {
        throw std::invalid_argument("rank-sum test input contains NaN");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

    std::vector<double> ranks(n);
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && pooled[order[end]] == pooled[order[start]]) ++end;
        const double avg = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t k = start; k < end; ++k) ranks[order[k]] = avg;
        const auto t = static_cast<double>(end - start);
        tie_term += t * t * t - t;
        start = end;
    }

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];

    const auto dna = static_cast<double>(na), dnb = static_cast<double>(nb), dn = static_cast<double>(n);
    RankSumResult result;
    result.statistic = rank_sum_a - dna * (dna + 1.0) / 2.0;

    const double centered = result.statistic - dna * dnb / 2.0;
    const double variance = dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (!(variance > 0.0)) {
        // every value tied: no evidence either way
        result.p = 1.0;
        return result;
    }
    const double sigma = std::sqrt(variance);

    switch (alternative) {
        case Alternative::a_greater:
            result.p = normal_upper_tail((centered - 0.5) / sigma);
            break;
        case Alternative::b_greater:
            result.p = normal_upper_tail(-(centered + 0.5) / sigma);
            break;
        case Alternative::two_sided: {
            const double correction = centered > 0 ? 0.5 : (centered < 0 ? -0.5 : 0.0);
            const double z = (centered - correction) / sigma;
            result.p = std::min(1.0, 2.0 * std::min(normal_upper_tail(z), normal_upper_tail(-z)));
            break;
        }
    }
    return result;
}

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    return sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile probability outside [0, 1]");
    const double pos = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return frac == 0.0 ? sorted[lo] : sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ComparisonTable compare_cohorts(std::span<const IndicatorVector> stars, std::span<const IndicatorVector> control) {
    if (stars.empty() || control.empty()) throw std::invalid_argument("cohort comparison needs two non-empty cohorts");

    ComparisonTable table;
    table.rows.reserve(kIndicatorCount);
    std::vector<double> s(stars.size()), c(control.size());
    for (std::size_t k = 0; k < kIndicatorCount; ++k) {
        std::transform(stars.begin(), stars.end(), s.begin(), [k](const IndicatorVector& v) { return v.values()[k]; });
        std::transform(control.begin(), control.end(), c.begin(),
                       [k](const IndicatorVector& v) { return v.values()[k]; });
        ComparisonRow row;
        row.indicator = std::string(kIndicatorNames[k]);
        row.median_stars = median(s);
        row.median_control = median(c);
        row.p = wilcoxon_rank_sum(s, c, Alternative::a_greater).p;
        table.rows.push_back(std::move(row));
    }

    std::vector<std::size_t> order(table.rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return table.rows[i].p < table.rows[j].p; });
    for (std::size_t r = 0; r < order.size(); ++r) table.rows[order[r]].rank = static_cast<int>(r + 1);
    return table;
}

BoxplotSummary boxplot_summary(std::string cohort, std::string indicator, std::span<const double> raw_values) {
    if (raw_values.empty()) throw std::invalid_argument("boxplot of an empty cohort");
    std::vector<double> v;
    v.reserve(raw_values.size());
    for (double x : raw_values) {
        if (!(x > -1.0)) throw std::invalid_argument("boxplot value must exceed -1 for log10(x + 1)");
        v.push_back(std::log10(x + 1.0));
    }
    std::sort(v.begin(), v.end());

    BoxplotSummary out;
    out.cohort = std::move(cohort);
    out.indicator = std::move(indicator);
    out.median = quantile_sorted(v, 0.5);
    out.q1 = quantile_sorted(v, 0.25);
    out.q3 = quantile_sorted(v, 0.75);
    const double reach = 1.5 * (out.q3 - out.q1);
    const double low_fence = out.q1 - reach, high_fence = out.q3 + reach;
    out.whisker_low = *std::find_if(v.begin(), v.end(), [&](double x) { return x >= low_fence; });
    out.whisker_high = *std::find_if(v.rbegin(), v.rend(), [&](double x) { return x <= high_fence; });
    for (double x : v) {
        if (x < low_fence || x > high_fence) out.outliers.push_back(x);
    }
    return out;
}

std::vector<BoxplotSummary> boxplot_export(const std::map<std::string, std::vector<IndicatorVector>>& cohorts,
                                           std::string_view indicator) {
    const std::size_t k = indicator_index(indicator);
    std::vector<BoxplotSummary> out;
    for (const auto& [name, vectors] : cohorts) {
        std::vector<double> values;
        values.reserve(vectors.size());
        for (const auto& v : vectors) values.push_back(v.values()[k]);
        out.push_back(boxplot_summary(name, std::string(indicator), values));
    }
    return out;
}

}  // namespace biblio
