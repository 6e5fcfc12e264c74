#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "biblio/corpus.hpp"

namespace biblio {

/// Thrown when some citation window has fewer than two qualifying years.
class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct YearRange {
    int min = 0;
    int max = 0;

    [[nodiscard]] bool contains(int year) const noexcept { return year >= min && year <= max; }
    bool operator==(const YearRange&) const = default;
};

/// Ordinary least-squares line, citations = slope * pub_year + intercept.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t n_points = 0;

    [[nodiscard]] double at(double x) const noexcept { return slope * x + intercept; }
    bool operator==(const LinearFit&) const = default;
};

/// Fits y on x by least squares. Needs at least two distinct x values.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Citation history of one paper for fitting: cumulative[w - 1] is the number
/// of citations received from the publication year through w - 1 years later.
/// Only fully observed windows are listed, so cumulative may be shorter than W.
struct CitationHistory {
    int pub_year = 0;
    std::vector<long> cumulative;
};

/// Expected citation counts per publication year, one regression line per
/// citation-window length w = 1..W.
class ExpectationModel {
public:
    ExpectationModel(std::vector<LinearFit> window_fits, YearRange fit_years, double floor = 1.0);

    /// max(slope_w * pub_year + intercept_w, floor). Years outside the fit
    /// range are extrapolated along the same line.
    [[nodiscard]] double expected(int pub_year, int window) const;

    [[nodiscard]] int windows() const noexcept { return static_cast<int>(fits_.size()); }
    [[nodiscard]] const LinearFit& fit(int window) const;
    [[nodiscard]] const std::vector<LinearFit>& fits() const noexcept { return fits_; }
    [[nodiscard]] YearRange fit_years() const noexcept { return fit_years_; }
    [[nodiscard]] double floor() const noexcept { return floor_; }

    bool operator==(const ExpectationModel&) const = default;

private:
    std::vector<LinearFit> fits_;
    YearRange fit_years_;
    double floor_;
};

struct FitOptions {
    YearRange year_range{1995, 2007};
    std::size_t min_papers_per_year = 100;
    int windows = 5;
    double floor = 1.0;
};

/// One regression per window over individual papers (not yearly means).
/// A year takes part in window w only if it has at least min_papers_per_year
/// papers observed for that window. Throws InsufficientData.
ExpectationModel fit_expectation_model(std::span<const CitationHistory> papers, const FitOptions& options);

/// Builds fitting input from a corpus. A window is observed for a paper when
/// pub_year + w - 1 <= census_year; by default the census year is the latest
/// year (publication or citation) appearing in the corpus.
std::vector<CitationHistory> citation_histories(const Corpus& corpus, int windows,
                                                std::optional<int> census_year = std::nullopt);

inline double expected_citations(const ExpectationModel& model, int pub_year, int window) {
    return model.expected(pub_year, window);
}

/// exp(mean(ln(c + 1))) - 1
double geometric_mean_baseline(std::span<const long> citation_counts);

void write_model(std::ostream& out, const ExpectationModel& model);
ExpectationModel read_model(std::istream& in);

}  // namespace biblio
