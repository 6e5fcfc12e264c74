#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "biblio/stats.hpp"
#include "oracles.hpp"

using namespace biblio;

namespace {

std::vector<double> distinct_sample(std::mt19937_64& rng, std::size_t n, std::set<double>& used) {
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::vector<double> out;
    while (out.size() < n) {
        double x = u(rng);
        if (used.insert(x).second) out.push_back(x);
    }
    return out;
}

IndicatorVector vector_with(std::size_t k, double value) {
    std::array<double, kIndicatorCount> v{};
    v.fill(1.0);
    v[k] = value;
    return IndicatorVector::from_values(v);
}

}  // namespace

TEST_CASE("rank-sum example: complete separation") {
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    auto r = wilcoxon_rank_sum(a, b, Alternative::b_greater);
    CHECK(r.statistic == 0.0);
    CHECK(r.p == doctest::Approx(0.5 * std::erfc(4.0 / std::sqrt(5.25) / std::sqrt(2.0))).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(0.0404).epsilon(0.01));
    CHECK(oracle::exact_rank_sum_upper(b, a) == doctest::Approx(0.05));

    auto up = wilcoxon_rank_sum(a, b, Alternative::a_greater);
    CHECK(up.p > 0.95);
}

TEST_CASE("rank-sum with ties matches a reference implementation") {
    // reference p-values from scipy.stats.mannwhitneyu(asymptotic, use_continuity=True)
    const std::vector<double> a{1.5, 2, 2, 7, 9}, b{2, 3, 3, 3, 10, 11, 0};
    auto g = wilcoxon_rank_sum(a, b, Alternative::a_greater);
    CHECK(g.statistic == 14.0);
    CHECK(g.p == doctest::Approx(0.7450132000890185).epsilon(1e-12));
    auto t = wilcoxon_rank_sum(a, b, Alternative::two_sided);
    CHECK(t.p == doctest::Approx(0.6211938216201959).epsilon(1e-12));
}

TEST_CASE("identical samples") {
    const std::vector<double> a{3, 1, 4, 1, 5, 9, 2, 6};
    CHECK(wilcoxon_rank_sum(a, a, Alternative::two_sided).p == doctest::Approx(1.0));
    const double p = wilcoxon_rank_sum(a, a, Alternative::a_greater).p;
    CHECK(p >= 0.45);
    CHECK(p <= 0.55);
    const std::vector<double> flat{2, 2, 2};
    CHECK(wilcoxon_rank_sum(flat, flat, Alternative::a_greater).p == 1.0);
}

TEST_CASE("rank-sum rejects empty samples") {
    const std::vector<double> a{1}, none;
    CHECK_THROWS_AS(wilcoxon_rank_sum(a, none, Alternative::a_greater), std::invalid_argument);
    CHECK_THROWS_AS(wilcoxon_rank_sum(none, a, Alternative::two_sided), std::invalid_argument);
}

TEST_CASE("normal approximation tracks exact enumeration on small tie-free samples") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> size(3, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<double> used;
        auto a = distinct_sample(rng, size(rng), used);
        auto b = distinct_sample(rng, size(rng), used);
        const double approx = wilcoxon_rank_sum(a, b, Alternative::a_greater).p;
        CHECK(std::abs(approx - oracle::exact_rank_sum_upper(a, b)) <= 0.02);
    }
}

TEST_CASE("rank-sum is invariant to common shifts and monotone transforms") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> v(0, 20);  // integers give ties too
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(7), b(11);
        for (auto& x : a) x = v(rng);
        for (auto& x : b) x = v(rng);
        for (auto alt : {Alternative::a_greater, Alternative::b_greater, Alternative::two_sided}) {
            auto base = wilcoxon_rank_sum(a, b, alt);
            auto shift = [](std::vector<double> s) {
                for (auto& x : s) x += 1000.5;
                return s;
            };
            auto logish = [](std::vector<double> s) {
                for (auto& x : s) x = std::log10(x + 1.0) * 3.0 - 7.0;
                return s;
            };
            auto s = wilcoxon_rank_sum(shift(a), shift(b), alt);
            auto m = wilcoxon_rank_sum(logish(a), logish(b), alt);
            CHECK(s.statistic == base.statistic);
            CHECK(s.p == base.p);
            CHECK(m.statistic == base.statistic);
            CHECK(m.p == base.p);
            CHECK(base.p >= 0.0);
            CHECK(base.p <= 1.0);
        }
        // one-sided p-values use opposite corrections, so they sum to at least 1
        const double up = wilcoxon_rank_sum(a, b, Alternative::a_greater).p;
        const double down = wilcoxon_rank_sum(a, b, Alternative::b_greater).p;
        CHECK(up + down >= 1.0 - 1e-12);
    }
}

TEST_CASE("median and quantiles") {
    CHECK(median(std::vector<double>{3, 1, 2}) == 2);
    CHECK(median(std::vector<double>{4, 1, 3, 2}) == 2.5);
    CHECK_THROWS_AS(median(std::vector<double>{}), std::invalid_argument);
    const std::vector<double> s{0, 1, 2, 3};
    CHECK(quantile_sorted(s, 0.25) == doctest::Approx(0.75));
    CHECK(quantile_sorted(s, 0.5) == doctest::Approx(1.5));
    CHECK(quantile_sorted(s, 1.0) == 3);
}

TEST_CASE("compare_cohorts against itself gives p near one half") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0, 30);
    std::vector<IndicatorVector> cohort;
    for (int i = 0; i < 40; ++i) {
        std::array<double, kIndicatorCount> v{};
        for (auto& x : v) x = std::round(u(rng));
        cohort.push_back(IndicatorVector::from_values(v));
    }
    auto table = compare_cohorts(cohort, cohort);
    REQUIRE(table.rows.size() == kIndicatorCount);
    std::set<int> ranks;
    for (std::size_t k = 0; k < kIndicatorCount; ++k) {
        const auto& row = table.rows[k];
        CHECK(row.indicator == kIndicatorNames[k]);
        CHECK(row.p == doctest::Approx(0.5).epsilon(0.05));
        CHECK(row.median_stars == row.median_control);
        ranks.insert(row.rank);
    }
    CHECK(ranks.size() == kIndicatorCount);
    CHECK(*ranks.begin() == 1);
    CHECK(*ranks.rbegin() == static_cast<int>(kIndicatorCount));
}

TEST_CASE("a dominating indicator takes rank one") {
    const std::size_t k = indicator_index("norm_citations");
    std::vector<IndicatorVector> stars, control;
    for (int i = 0; i < 10; ++i) {
        stars.push_back(vector_with(k, 100.0 + i));
        control.push_back(vector_with(k, static_cast<double>(i)));
    }
    auto table = compare_cohorts(stars, control);
    CHECK(table.rows[k].rank == 1);
    for (const auto& row : table.rows) CHECK(row.p >= table.rows[k].p);
    // the tied rows keep indicator order
    CHECK(table.rows[0].rank == 2);
    CHECK(table.rows[16].rank == 17);

    std::vector<double> s, c;
    for (const auto& v : stars) s.push_back(v.norm_citations);
    for (const auto& v : control) c.push_back(v.norm_citations);
    CHECK(table.rows[k].median_stars == oracle::median(s));
    CHECK(table.rows[k].median_control == oracle::median(c));

    CHECK_THROWS_AS(compare_cohorts(stars, {}), std::invalid_argument);
}

TEST_CASE("ranks follow ascending p") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> u(0, 25);
    std::vector<IndicatorVector> stars, control;
    for (int i = 0; i < 30; ++i) {
        std::array<double, kIndicatorCount> v{};
        for (auto& x : v) x = u(rng) + (i % 3);
        stars.push_back(IndicatorVector::from_values(v));
        for (auto& x : v) x = u(rng);
        control.push_back(IndicatorVector::from_values(v));
    }
    auto table = compare_cohorts(stars, control);
    std::vector<const ComparisonRow*> by_rank(kIndicatorCount);
    for (const auto& row : table.rows) by_rank.at(static_cast<std::size_t>(row.rank - 1)) = &row;
    for (std::size_t r = 1; r < by_rank.size(); ++r) CHECK(by_rank[r - 1]->p <= by_rank[r]->p);
}

TEST_CASE("boxplot summary on the log scale") {
    auto box = boxplot_summary("c", "citations", std::vector<double>{0, 9, 99, 999});
    CHECK(box.median == doctest::Approx(1.5));
    CHECK(box.q1 == doctest::Approx(0.75));
    CHECK(box.q3 == doctest::Approx(2.25));
    CHECK(box.whisker_low == 0.0);
    CHECK(box.whisker_high == doctest::Approx(3.0));
    CHECK(box.outliers.empty());

    auto single = boxplot_summary("c", "h", std::vector<double>{99});
    CHECK(single.median == doctest::Approx(2.0));

    // 1.5 IQR rule: log10(1e6 + 1) ~ 6 lies beyond q3 + 1.5 IQR
    auto outl = boxplot_summary("c", "g", std::vector<double>{1, 1, 1, 1, 1, 1e6});
    REQUIRE(outl.outliers.size() == 1);
    CHECK(outl.outliers[0] == doctest::Approx(6.0));
    CHECK(outl.whisker_high == doctest::Approx(std::log10(2.0)));

    CHECK_THROWS_AS(boxplot_summary("c", "h", std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(boxplot_summary("c", "h", std::vector<double>{-2}), std::invalid_argument);
}

TEST_CASE("boxplot export per cohort") {
    std::map<std::string, std::vector<IndicatorVector>> cohorts;
    for (double x : {0.0, 9.0, 99.0, 999.0}) cohorts["stars"].push_back(vector_with(indicator_index("g"), x));
    cohorts["control"].push_back(vector_with(indicator_index("g"), 0.0));
    auto boxes = boxplot_export(cohorts, "g");
    REQUIRE(boxes.size() == 2);
    CHECK(boxes[0].cohort == "control");
    CHECK(boxes[0].median == 0.0);
    CHECK(boxes[1].cohort == "stars");
    CHECK(boxes[1].median == doctest::Approx(1.5));
    CHECK_THROWS_AS(boxplot_export(cohorts, "nope"), std::invalid_argument);
}
