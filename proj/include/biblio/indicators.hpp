#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/corpus.hpp"
#include "biblio/expectation.hpp"

namespace biblio {

struct RankedPaper {
    std::string paper_id;
    long citations = 0;    // c_i
    int authors = 1;       // a_i
    double expected = 1.0; // E(c_i)
};

/// An author's papers in descending citation order. Equal citation counts are
/// ordered by ascending author count, then paper_id, so that effective ranks
/// accumulate deterministically.
class RankedPapers {
public:
    RankedPapers() = default;
    explicit RankedPapers(std::vector<RankedPaper> papers);

    [[nodiscard]] const std::vector<RankedPaper>& entries() const noexcept { return entries_; }
    /// effective_ranks()[r - 1] = sum over the top r papers of 1 / a_i
    [[nodiscard]] const std::vector<double>& effective_ranks() const noexcept { return effective_ranks_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

private:
    std::vector<RankedPaper> entries_;
    std::vector<double> effective_ranks_;
};

/// Ranks the record's papers; each paper's expectation uses the window that
/// runs from its publication year to the record's last year. Throws
/// std::out_of_range if the model has fewer windows than the record needs.
RankedPapers rank_papers(const AuthorRecord& record, const ExpectationModel& model);

struct Productivity {
    double n = 0;
    double f = 0;
};
Productivity productivity(const AuthorRecord& record);

struct TotalInfluence {
    double citations = 0;
    double norm_citations = 0;
    double j_index = 0;
    double fract_citations = 0;
    double fract_norm_citations = 0;
};
/// Throws std::invalid_argument if any expectation is not positive.
TotalInfluence total_influence(const RankedPapers& ranked);

struct TypicalInfluence {
    double mean_citations = 0;
    double mean_fract_citations = 0;
    double median_fract_citations = 0;
    double max_fract_citations = 0;
};
TypicalInfluence typical_influence(const RankedPapers& ranked);

int h_index(const RankedPapers& ranked);
int g_index(const RankedPapers& ranked);
double h_m_index(const RankedPapers& ranked);
int g_f_index(const RankedPapers& ranked);
double g_m_index(const RankedPapers& ranked);

double collaborative_coefficient(const AuthorRecord& record);

inline constexpr std::size_t kIndicatorCount = 17;

/// Indicator names in table order.
inline constexpr std::array<std::string_view, kIndicatorCount> kIndicatorNames = {
    "n",
    "f",
    "citations",
    "norm_citations",
    "j_index",
    "fract_citations",
    "fract_norm_citations",
    "mean_citations",
    "mean_fract_citations",
    "median_fract_citations",
    "max_fract_citations",
    "h",
    "g",
    "h_m",
    "g_f",
    "g_m",
    "collab_coeff",
};

/// Index into kIndicatorNames; throws std::invalid_argument for unknown names.
std::size_t indicator_index(std::string_view name);

struct IndicatorVector {
    double n = 0;
    double f = 0;
    double citations = 0;
    double norm_citations = 0;
    double j_index = 0;
    double fract_citations = 0;
    double fract_norm_citations = 0;
    double mean_citations = 0;
    double mean_fract_citations = 0;
    double median_fract_citations = 0;
    double max_fract_citations = 0;
    double h = 0;
    double g = 0;
    double h_m = 0;
    double g_f = 0;
    double g_m = 0;
    double collab_coeff = 0;

    [[nodiscard]] std::array<double, kIndicatorCount> values() const;
    static IndicatorVector from_values(std::span<const double, kIndicatorCount> values);

    bool operator==(const IndicatorVector&) const = default;
};

IndicatorVector indicator_vector(const AuthorRecord& record, const ExpectationModel& model);

}  // namespace biblio
