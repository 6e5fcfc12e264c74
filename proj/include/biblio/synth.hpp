#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "biblio/corpus.hpp"
#include "biblio/expectation.hpp"

namespace biblio {

/// Parameters of a synthetic two-cohort corpus.
///
/// Every author publishes for `window_years` consecutive years starting at a
/// uniformly drawn year; the first year always has at least one paper. The
/// number of citations a paper collects over its own first `window_years`
/// years is negative-binomial with mean
///   base_expected_citations * annual_growth_factor^(pub_year - start_year_range.min)
/// (times star_effect_multiplier for stars) and shape `dispersion`; smaller
/// dispersion gives heavier skew. Each citation lands in publication year + k
/// with probability proportional to citation_year_profile[k].
struct SynthConfig {
    std::uint64_t seed = 0;
    int n_control = 74;
    int n_stars = 29;
    YearRange start_year_range{1991, 1998};
    double papers_per_year_mean = 1.5;
    std::vector<std::pair<int, double>> coauthor_distribution{{1, 0.15}, {2, 0.4}, {3, 0.3}, {4, 0.15}};
    double base_expected_citations = 8.0;
    double annual_growth_factor = std::pow(2.0, 1.0 / 20.0);
    double dispersion = 1.0;
    double star_effect_multiplier = 1.0;
    int window_years = 5;
    std::vector<double> citation_year_profile{0.1, 0.2, 0.25, 0.25, 0.2};

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Mean window citation count of a paper from `pub_year`.
    [[nodiscard]] double citation_rate(int pub_year, bool star) const;
};

/// JSON form of the config. `seed` is required; other keys fall back to the
/// defaults above. Unknown keys are rejected.
SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SynthConfig& config);

struct SyntheticCorpus {
    Corpus corpus;
    std::vector<std::string> star_ids;
    std::vector<std::string> control_ids;
};

/// Deterministic for a fixed config (including seed).
SyntheticCorpus generate_corpus(const SynthConfig& config);

}  // namespace biblio
