#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace biblio {

/// Raised by ingestion when a record cannot be accepted. Carries the 1-based
/// line number of the offending record (0 when not tied to a line).
class CorpusError : public std::runtime_error {
public:
    CorpusError(std::size_t line, const std::string& what);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// One publication. Each entry of citing_years is a single citation event.
struct Paper {
    std::string paper_id;
    int pub_year = 0;
    std::vector<std::string> author_ids;  // may be empty when only the count is known
    int author_count = 1;
    std::vector<int> citing_years;

    bool operator==(const Paper&) const = default;
};

/// Checks the per-paper invariants; throws std::invalid_argument on violation.
void validate(const Paper& paper);

class Corpus {
public:
    /// Adds a paper after validation. Throws std::invalid_argument on a
    /// duplicate paper_id or a broken invariant.
    void add(Paper paper);

    [[nodiscard]] const std::map<std::string, Paper>& papers() const noexcept { return papers_; }
    /// Author id to the ids of their papers, sorted.
    [[nodiscard]] const std::map<std::string, std::vector<std::string>>& author_index() const noexcept {
        return author_index_;
    }

    [[nodiscard]] const Paper* find(std::string_view paper_id) const;
    [[nodiscard]] bool has_author(std::string_view author_id) const;
    [[nodiscard]] std::size_t size() const noexcept { return papers_.size(); }
    [[nodiscard]] bool empty() const noexcept { return papers_.empty(); }

    bool operator==(const Corpus&) const = default;

private:
    std::map<std::string, Paper> papers_;
    std::map<std::string, std::vector<std::string>> author_index_;
};

/// Parses line-delimited JSON records. Blank lines are skipped.
/// Keys: paper_id, pub_year, author_ids and/or author_count, citing_years.
Corpus ingest_corpus(std::istream& source);

/// Writes the corpus in the ingestion format, one paper per line, ordered by paper_id.
void write_corpus(std::ostream& out, const Corpus& corpus);

/// A paper as seen from inside one author's early-career window.
struct WindowedPaper {
    std::string paper_id;
    int pub_year = 0;
    int author_count = 1;
    long citations = 0;  // events with citing year <= last window year

    bool operator==(const WindowedPaper&) const = default;
};

struct AuthorRecord {
    std::string author_id;
    int first_year = 0;
    int window_years = 5;
    std::vector<WindowedPaper> papers;  // ordered by (pub_year, paper_id)

    [[nodiscard]] int last_year() const noexcept { return first_year + window_years - 1; }
    /// Mean number of co-authors, mean(a_i - 1).
    [[nodiscard]] double mean_coauthors() const;

    bool operator==(const AuthorRecord&) const = default;
};

/// Restricts an author's papers and citations to the calendar years
/// first_year .. first_year + window_years - 1. Throws std::out_of_range for
/// an unknown author and std::invalid_argument for window_years < 1.
AuthorRecord build_author_record(const Corpus& corpus, std::string_view author_id, int window_years = 5);

struct FilterSpec {
    double mean_coauthors_min = 1.0;  // exclusive
    double mean_coauthors_max = 4.0;  // exclusive
    std::optional<int> max_start_year = 1998;
    std::optional<double> hard_mean_coauthor_cap;  // inclusive upper bound
};

/// Keeps records passing every filter in `spec`; input order is preserved.
/// Throws std::invalid_argument when the co-author bounds are inverted.
std::vector<AuthorRecord> filter_cohort(std::span<const AuthorRecord> records, const FilterSpec& spec);

[[nodiscard]] bool passes(const AuthorRecord& record, const FilterSpec& spec);

}  // namespace biblio
