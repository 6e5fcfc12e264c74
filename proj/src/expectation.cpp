#include "biblio/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

namespace biblio {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("least_squares: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientData("least_squares: need at least two points");

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientData("least_squares: all x values identical");

    const double slope = sxy / sxx;
    return {slope, my - slope * mx, n};
}

ExpectationModel::ExpectationModel(std::vector<LinearFit> window_fits, YearRange fit_years, double floor)
    : fits_(std::move(window_fits)), fit_years_(fit_years), floor_(floor) {
    if (fits_.empty()) throw std::invalid_argument("expectation model needs at least one window");
    if (!(floor_ > 0.0)) throw std::invalid_argument("expectation floor must be positive");
    if (fit_years_.min > fit_years_.max) throw std::invalid_argument("fit year range is inverted");
    for (const auto& f : fits_) {
        if (f.n_points < 2) throw std::invalid_argument("every window fit needs n_points >= 2");
        if (!std::isfinite(f.slope) || !std::isfinite(f.intercept)) {
            throw std::invalid_argument("window fit has non-finite coefficients");
        }
    }
}

const LinearFit& ExpectationModel::fit(int window) const {
    if (window < 1 || window > windows()) {
        throw std::out_of_range("citation window " + std::to_string(window) + " outside 1.." +
                                std::to_string(windows()));
    }
    return fits_[static_cast<std::size_t>(window - 1)];
}

double ExpectationModel::expected(int pub_year, int window) const {
    return std::max(fit(window).at(static_cast<double>(pub_year)), floor_);
}

ExpectationModel fit_expectation_model(std::span<const CitationHistory> papers, const FitOptions& options) {
    if (options.windows < 1) throw std::invalid_argument("windows must be >= 1");
    if (options.year_range.min > options.year_range.max) throw std::invalid_argument("year range is inverted");

    std::vector<LinearFit> fits;
    fits.reserve(static_cast<std::size_t>(options.windows));
    for (int w = 1; w <= options.windows; ++w) {
        const auto wi = static_cast<std::size_t>(w - 1);
        std::map<int, std::size_t> per_year;
        for (const auto& p : papers) {
            if (options.year_range.contains(p.pub_year) && p.cumulative.size() > wi) ++per_year[p.pub_year];
        }
        std::vector<double> xs, ys;
        for (const auto& p : papers) {
            if (!options.year_range.contains(p.pub_year) || p.cumulative.size() <= wi) continue;
            if (per_year[p.pub_year] < options.min_papers_per_year) continue;
            xs.push_back(static_cast<double>(p.pub_year));
            ys.push_back(static_cast<double>(p.cumulative[wi]));
        }
        const auto qualifying = std::count_if(per_year.begin(), per_year.end(), [&](const auto& kv) {
            return kv.second >= options.min_papers_per_year;
        });
        if (qualifying < 2) {
            throw InsufficientData("insufficient data for window " + std::to_string(w) + ": " +
                                   std::to_string(qualifying) + " year(s) with at least " +
                                   std::to_string(options.min_papers_per_year) + " papers");
        }
        fits.push_back(least_squares(xs, ys));
    }
    return ExpectationModel(std::move(fits), options.year_range, options.floor);
}

std::vector<CitationHistory> citation_histories(const Corpus& corpus, int windows, std::optional<int> census_year) {
    if (windows < 1) throw std::invalid_argument("windows must be >= 1");
    int census = 0;
    if (census_year) {
        census = *census_year;
    } else {
        bool any = false;
        for (const auto& [id, p] : corpus.papers()) {
            census = any ? std::max(census, p.pub_year) : p.pub_year;
            any = true;
            for (int y : p.citing_years) census = std::max(census, y);
        }
    }

    std::vector<CitationHistory> out;
    out.reserve(corpus.size());
    for (const auto& [id, p] : corpus.papers()) {
        CitationHistory h{p.pub_year, {}};
        for (int w = 1; w <= windows && p.pub_year + w - 1 <= census; ++w) {
            const int last = p.pub_year + w - 1;
            h.cumulative.push_back(static_cast<long>(
                std::count_if(p.citing_years.begin(), p.citing_years.end(), [last](int y) { return y <= last; })));
        }
        out.push_back(std::move(h));
    }
    return out;
}

double geometric_mean_baseline(std::span<const long> citation_counts) {
    if (citation_counts.empty()) throw std::invalid_argument("geometric mean of an empty list");
    double log_sum = 0.0;
    for (long c : citation_counts) {
        if (c < 0) throw std::invalid_argument("negative citation count");
        log_sum += std::log1p(static_cast<double>(c));
    }
    return std::expm1(log_sum / static_cast<double>(citation_counts.size()));
}

namespace {
constexpr const char* kModelFormat = "biblio-expectation-model";
}

void write_model(std::ostream& out, const ExpectationModel& model) {
    nlohmann::ordered_json j;
    j["format"] = kModelFormat;
    j["version"] = 1;
    j["floor"] = model.floor();
    j["fit_year_range"] = {model.fit_years().min, model.fit_years().max};
    auto& windows = j["windows"] = nlohmann::ordered_json::array();
    for (int w = 1; w <= model.windows(); ++w) {
        const auto& f = model.fit(w);
        nlohmann::ordered_json row;
        row["window"] = w;
        row["slope"] = f.slope;
        row["intercept"] = f.intercept;
        row["n_points"] = f.n_points;
        windows.push_back(std::move(row));
    }
    out << j.dump(2) << '\n';
}

ExpectationModel read_model(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("format").get<std::string>() != kModelFormat) {
            throw std::invalid_argument("not an expectation model file");
        }
        const auto& range = j.at("fit_year_range");
        YearRange years{range.at(0).get<int>(), range.at(1).get<int>()};
        std::vector<LinearFit> fits;
        int expected_window = 1;
        for (const auto& row : j.at("windows")) {
            if (row.at("window").get<int>() != expected_window++) {
                throw std::invalid_argument("model windows must be listed as 1..W in order");
            }
            fits.push_back({row.at("slope").get<double>(), row.at("intercept").get<double>(),
                            row.at("n_points").get<std::size_t>()});
        }
        return ExpectationModel(std::move(fits), years, j.at("floor").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed model file: ") + e.what());
    }
}

}  // namespace biblio
