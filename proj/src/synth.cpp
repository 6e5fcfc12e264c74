#include "biblio/synth.hpp"

#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>

namespace biblio {

namespace {

void require(bool ok, const char* field, const std::string& why) {
    if (!ok) throw std::invalid_argument(std::string("synth config field '") + field + "': " + why);
}

std::string numbered(const char* prefix, int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%04d", prefix, k);
    return buf;
}

}  // namespace

void SynthConfig::validate() const {
    require(n_control >= 0, "n_control", "must be >= 0");
    require(n_stars >= 0, "n_stars", "must be >= 0");
    require(start_year_range.min <= start_year_range.max, "start_year_range", "min exceeds max");
    require(papers_per_year_mean >= 0.0 && std::isfinite(papers_per_year_mean), "papers_per_year_mean",
            "must be finite and >= 0");
    require(!coauthor_distribution.empty(), "coauthor_distribution", "must not be empty");
    double total = 0.0;
    for (const auto& [k, w] : coauthor_distribution) {
        require(k >= 0, "coauthor_distribution", "co-author counts must be >= 0");
        require(w >= 0.0 && std::isfinite(w), "coauthor_distribution", "weights must be finite and >= 0");
        total += w;
    }
    require(total > 0.0, "coauthor_distribution", "weights must not all be zero");
    require(base_expected_citations >= 0.0 && std::isfinite(base_expected_citations), "base_expected_citations",
            "must be finite and >= 0");
    require(annual_growth_factor > 0.0 && std::isfinite(annual_growth_factor), "annual_growth_factor",
            "must be > 0");
    require(dispersion > 0.0 && std::isfinite(dispersion), "dispersion", "must be > 0");
    require(star_effect_multiplier >= 1.0 && std::isfinite(star_effect_multiplier), "star_effect_multiplier",
            "must be >= 1");
    require(window_years >= 1, "window_years", "must be >= 1");
    require(citation_year_profile.size() == static_cast<std::size_t>(window_years), "citation_year_profile",
            "needs one weight per window year");
    total = 0.0;
    for (double w : citation_year_profile) {
        require(w >= 0.0 && std::isfinite(w), "citation_year_profile", "weights must be finite and >= 0");
        total += w;
    }
    require(total > 0.0, "citation_year_profile", "weights must not all be zero");
}

double SynthConfig::citation_rate(int pub_year, bool star) const {
    const double rate =
        base_expected_citations * std::pow(annual_growth_factor, pub_year - start_year_range.min);
    return star ? rate * star_effect_multiplier : rate;
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("synth config must be a JSON object");
    static const std::set<std::string> known = {
        "seed",          "n_control",        "n_stars",  "start_year_range",
        "papers_per_year_mean", "coauthor_distribution", "base_expected_citations", "annual_growth_factor",
        "dispersion",    "star_effect_multiplier", "window_years", "citation_year_profile"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw std::invalid_argument("synth config field '" + key + "': unknown field");
    }

    SynthConfig c;
    auto read = [&](const char* key, auto& target) {
        auto it = j.find(key);
        if (it == j.end()) return false;
        try {
            it->get_to(target);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("synth config field '") + key + "': " + e.what());
        }
        return true;
    };

    if (!j.contains("seed")) throw std::invalid_argument("synth config field 'seed': missing");
    read("seed", c.seed);
    read("n_control", c.n_control);
    read("n_stars", c.n_stars);
    if (std::vector<int> range; read("start_year_range", range)) {
        require(range.size() == 2, "start_year_range", "expects [min, max]");
        c.start_year_range = {range[0], range[1]};
    }
    read("papers_per_year_mean", c.papers_per_year_mean);
    if (auto it = j.find("coauthor_distribution"); it != j.end()) {
        require(it->is_object(), "coauthor_distribution", "expects an object of count -> weight");
        c.coauthor_distribution.clear();
        for (const auto& [key, weight] : it->items()) {
            int k = 0;
            try {
                std::size_t used = 0;
                k = std::stoi(key, &used);
                require(used == key.size(), "coauthor_distribution", "keys must be integers");
            } catch (const std::logic_error&) {
                require(false, "coauthor_distribution", "keys must be integers");
            }
            require(weight.is_number(), "coauthor_distribution", "weights must be numbers");
            c.coauthor_distribution.emplace_back(k, weight.get<double>());
        }
        std::sort(c.coauthor_distribution.begin(), c.coauthor_distribution.end());
    }
    read("base_expected_citations", c.base_expected_citations);
    read("annual_growth_factor", c.annual_growth_factor);
    read("dispersion", c.dispersion);
    read("star_effect_multiplier", c.star_effect_multiplier);
    read("window_years", c.window_years);
    read("citation_year_profile", c.citation_year_profile);
    c.validate();
    return c;
}

nlohmann::ordered_json to_json(const SynthConfig& c) {
    nlohmann::ordered_json j;
    j["seed"] = c.seed;
    j["n_control"] = c.n_control;
    j["n_stars"] = c.n_stars;
    j["start_year_range"] = {c.start_year_range.min, c.start_year_range.max};
    j["papers_per_year_mean"] = c.papers_per_year_mean;
    auto& dist = j["coauthor_distribution"] = nlohmann::ordered_json::object();
    for (const auto& [k, w] : c.coauthor_distribution) dist[std::to_string(k)] = w;
    j["base_expected_citations"] = c.base_expected_citations;
    j["annual_growth_factor"] = c.annual_growth_factor;
    j["dispersion"] = c.dispersion;
    j["star_effect_multiplier"] = c.star_effect_multiplier;
    j["window_years"] = c.window_years;
    j["citation_year_profile"] = c.citation_year_profile;
    return j;
}

SyntheticCorpus generate_corpus(const SynthConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);

    std::vector<double> coauthor_weights;
    for (const auto& [k, w] : config.coauthor_distribution) coauthor_weights.push_back(w);
    std::discrete_distribution<std::size_t> pick_coauthors(coauthor_weights.begin(), coauthor_weights.end());
    std::discrete_distribution<int> pick_offset(config.citation_year_profile.begin(),
                                                config.citation_year_profile.end());
    std::uniform_int_distribution<int> pick_start(config.start_year_range.min, config.start_year_range.max);

    SyntheticCorpus out;
    auto emit_author = [&](const std::string& author_id, bool star) {
        const int start = pick_start(rng);
        int paper_no = 0;
        for (int t = 0; t < config.window_years; ++t) {
            int count = 0;
            if (config.papers_per_year_mean > 0.0) {
                count = std::poisson_distribution<int>(config.papers_per_year_mean)(rng);
            }
            if (t == 0) count = std::max(count, 1);
            for (int p = 0; p < count; ++p) {
                Paper paper;
                paper.paper_id = author_id + "-p" + std::to_string(++paper_no);
                paper.pub_year = start + t;
                const int coauthors = config.coauthor_distribution[pick_coauthors(rng)].first;
                paper.author_ids.push_back(author_id);
                for (int k = 1; k <= coauthors; ++k) paper.author_ids.push_back(paper.paper_id + "-c" + std::to_string(k));
                paper.author_count = coauthors + 1;

                const double mean = config.citation_rate(paper.pub_year, star);
                double lambda = 0.0;
                if (mean > 0.0) {
                    lambda = std::gamma_distribution<double>(config.dispersion, mean / config.dispersion)(rng);
                }
                const long events = lambda > 0.0 ? std::poisson_distribution<long>(lambda)(rng) : 0;
                paper.citing_years.reserve(static_cast<std::size_t>(events));
                for (long e = 0; e < events; ++e) paper.citing_years.push_back(paper.pub_year + pick_offset(rng));
                std::sort(paper.citing_years.begin(), paper.citing_years.end());
                out.corpus.add(std::move(paper));
            }
        }
    };

    for (int i = 1; i <= config.n_stars; ++i) {
        out.star_ids.push_back(numbered("star-", i));
        emit_author(out.star_ids.back(), true);
    }
    for (int i = 1; i <= config.n_control; ++i) {
        out.control_ids.push_back(numbered("ctl-", i));
        emit_author(out.control_ids.back(), false);
    }
    return out;
}

}  // namespace biblio
