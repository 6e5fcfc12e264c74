#include "biblio/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace biblio {

RankedPapers::RankedPapers(std::vector<RankedPaper> papers) : entries_(std::move(papers)) {
    for (const auto& p : entries_) {
        if (p.authors < 1) throw std::invalid_argument("paper " + p.paper_id + ": author count must be >= 1");
        if (p.citations < 0) throw std::invalid_argument("paper " + p.paper_id + ": negative citation count");
    }
    std::sort(entries_.begin(), entries_.end(), [](const RankedPaper& a, const RankedPaper& b) {
        return std::tie(b.citations, a.authors, a.paper_id) < std::tie(a.citations, b.authors, b.paper_id);
    });
    effective_ranks_.reserve(entries_.size());
    double r_eff = 0.0;
    for (const auto& p : entries_) {
        r_eff += 1.0 / p.authors;
        effective_ranks_.push_back(r_eff);
    }
}

RankedPapers rank_papers(const AuthorRecord& record, const ExpectationModel& model) {
    std::vector<RankedPaper> papers;
    papers.reserve(record.papers.size());
    for (const auto& p : record.papers) {
        const int window = record.first_year + record.window_years - p.pub_year;
        papers.push_back({p.paper_id, p.citations, p.author_count, model.expected(p.pub_year, window)});
    }
    return RankedPapers(std::move(papers));
}

Productivity productivity(const AuthorRecord& record) {
    Productivity out;
    for (const auto& p : record.papers) {
        out.n += 1;
        out.f += 1.0 / p.author_count;
    }
    return out;
}

TotalInfluence total_influence(const RankedPapers& ranked) {
    // extended accumulators keep short sums like 4/2.5 + 2/2.5 correctly rounded
    long double citations = 0, norm = 0, j = 0, fract = 0, fract_norm = 0;
    for (const auto& p : ranked.entries()) {
        if (!(p.expected > 0.0)) {
            throw std::invalid_argument("paper " + p.paper_id + ": expected citations must be positive");
        }
        const auto c = static_cast<long double>(p.citations);
        citations += c;
        norm += c / p.expected;
        j += std::sqrt(c);
        fract += c / p.authors;
        fract_norm += c / (static_cast<long double>(p.expected) * p.authors);
    }
    return {static_cast<double>(citations), static_cast<double>(norm), static_cast<double>(j),
            static_cast<double>(fract), static_cast<double>(fract_norm)};
}

TypicalInfluence typical_influence(const RankedPapers& ranked) {
    if (ranked.empty()) throw std::invalid_argument("typical influence of an empty record");
    const auto n = static_cast<double>(ranked.size());

    std::vector<double> fract;
    fract.reserve(ranked.size());
    long double sum = 0, fract_sum = 0;
    for (const auto& p : ranked.entries()) {
        const auto c = static_cast<long double>(p.citations);
        sum += c;
        fract_sum += c / p.authors;
        fract.push_back(static_cast<double>(c / p.authors));
    }
    std::sort(fract.begin(), fract.end());
    const std::size_t mid = fract.size() / 2;
    const double median = fract.size() % 2 == 1 ? fract[mid] : (fract[mid - 1] + fract[mid]) / 2.0;

    return {static_cast<double>(sum / n), static_cast<double>(fract_sum / n), median, fract.back()};
}

int h_index(const RankedPapers& ranked) {
    int h = 0;
    const auto& e = ranked.entries();
    for (std::size_t r = 1; r <= e.size(); ++r) {
        if (e[r - 1].citations >= static_cast<long>(r)) h = static_cast<int>(r);
    }
    return h;
}

int g_index(const RankedPapers& ranked) {
    int g = 0;
    long cumulative = 0;
    const auto& e = ranked.entries();
    for (std::size_t r = 1; r <= e.size(); ++r) {
        cumulative += e[r - 1].citations;
        if (cumulative >= static_cast<long>(r * r)) g = static_cast<int>(r);
    }
    return g;
}

double h_m_index(const RankedPapers& ranked) {
    double h_m = 0.0;
    const auto& e = ranked.entries();
    const auto& r_eff = ranked.effective_ranks();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (static_cast<double>(e[i].citations) >= r_eff[i]) h_m = r_eff[i];
    }
    return h_m;
}

// The fractional prefix mean is not monotone in r, so every rank is checked.
int g_f_index(const RankedPapers& ranked) {
    int g_f = 0;
    double cumulative = 0.0;
    const auto& e = ranked.entries();
    for (std::size_t r = 1; r <= e.size(); ++r) {
        cumulative += static_cast<double>(e[r - 1].citations) / e[r - 1].authors;
        if (cumulative >= static_cast<double>(r * r)) g_f = static_cast<int>(r);
    }
    return g_f;
}

double g_m_index(const RankedPapers& ranked) {
    double g_m = 0.0;
    double cumulative = 0.0;
    const auto& e = ranked.entries();
    const auto& r_eff = ranked.effective_ranks();
    for (std::size_t i = 0; i < e.size(); ++i) {
        cumulative += static_cast<double>(e[i].citations) / e[i].authors;
        if (cumulative >= r_eff[i] * r_eff[i]) g_m = r_eff[i];
    }
    return g_m;
}

double collaborative_coefficient(const AuthorRecord& record) {
    if (record.papers.empty()) throw std::invalid_argument("collaborative coefficient of an empty record");
    const auto [n, f] = productivity(record);
    return (n - f) / n;
}

std::size_t indicator_index(std::string_view name) {
    auto it = std::find(kIndicatorNames.begin(), kIndicatorNames.end(), name);
    if (it == kIndicatorNames.end()) throw std::invalid_argument("unknown indicator '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - kIndicatorNames.begin());
}

std::array<double, kIndicatorCount> IndicatorVector::values() const {
    return {n,
            f,
            citations,
            norm_citations,
            j_index,
            fract_citations,
            fract_norm_citations,
            mean_citations,
            mean_fract_citations,
            median_fract_citations,
            max_fract_citations,
            h,
            g,
            h_m,
            g_f,
            g_m,
            collab_coeff};
}

IndicatorVector IndicatorVector::from_values(std::span<const double, kIndicatorCount> v) {
    return {v[0], v[1], v[2],  v[3],  v[4],  v[5],  v[6],  v[7], v[8],
            v[9], v[10], v[11], v[12], v[13], v[14], v[15], v[16]};
}

IndicatorVector indicator_vector(const AuthorRecord& record, const ExpectationModel& model) {
    if (record.papers.empty()) throw std::invalid_argument("author " + record.author_id + " has no papers");
    const RankedPapers ranked = rank_papers(record, model);
    const auto prod = productivity(record);
    const auto total = total_influence(ranked);
    const auto typical = typical_influence(ranked);

    IndicatorVector v;
    v.n = prod.n;
    v.f = prod.f;
    v.citations = total.citations;
    v.norm_citations = total.norm_citations;
    v.j_index = total.j_index;
    v.fract_citations = total.fract_citations;
    v.fract_norm_citations = total.fract_norm_citations;
    v.mean_citations = typical.mean_citations;
    v.mean_fract_citations = typical.mean_fract_citations;
    v.median_fract_citations = typical.median_fract_citations;
    v.max_fract_citations = typical.max_fract_citations;
    v.h = h_index(ranked);
    v.g = g_index(ranked);
    v.h_m = h_m_index(ranked);
    v.g_f = g_f_index(ranked);
    v.g_m = g_m_index(ranked);
    v.collab_coeff = collaborative_coefficient(record);
    return v;
}

}  // namespace biblio
