#include "biblio/corpus.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include <json.hpp>

namespace biblio {

using nlohmann::json;

CorpusError::CorpusError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

void validate(const Paper& paper) {
    if (paper.paper_id.empty()) {
        throw std::invalid_argument("empty paper_id");
    }
    if (paper.author_count < 1) {
        throw std::invalid_argument("paper " + paper.paper_id + ": author_count must be >= 1");
    }
    if (!paper.author_ids.empty()) {
        if (static_cast<std::size_t>(paper.author_count) != paper.author_ids.size()) {
            throw std::invalid_argument("paper " + paper.paper_id + ": author_count " +
                                        std::to_string(paper.author_count) + " disagrees with " +
                                        std::to_string(paper.author_ids.size()) + " author_ids");
        }
        std::set<std::string_view> seen;
        for (const auto& id : paper.author_ids) {
            if (id.empty()) throw std::invalid_argument("paper " + paper.paper_id + ": empty author id");
            if (!seen.insert(id).second) {
                throw std::invalid_argument("paper " + paper.paper_id + ": author " + id + " listed twice");
            }
        }
    }
    for (int year : paper.citing_years) {
        if (year < paper.pub_year) {
            throw std::invalid_argument("paper " + paper.paper_id + ": citing year " + std::to_string(year) +
                                        " precedes pub_year " + std::to_string(paper.pub_year));
        }
    }
}

void Corpus::add(Paper paper) {
    validate(paper);
    if (papers_.contains(paper.paper_id)) {
        throw std::invalid_argument("duplicate paper_id " + paper.paper_id);
    }
    for (const auto& author : paper.author_ids) {
        auto& ids = author_index_[author];
        ids.insert(std::upper_bound(ids.begin(), ids.end(), paper.paper_id), paper.paper_id);
    }
    auto id = paper.paper_id;
    papers_.emplace(std::move(id), std::move(paper));
}

const Paper* Corpus::find(std::string_view paper_id) const {
    auto it = papers_.find(std::string(paper_id));
    return it == papers_.end() ? nullptr : &it->second;
}

bool Corpus::has_author(std::string_view author_id) const {
    return author_index_.contains(std::string(author_id));
}

namespace {

Paper parse_record(const std::string& text) {
    json j = json::parse(text);  // throws json::parse_error
    if (!j.is_object()) throw std::invalid_argument("record is not an object");

    auto require = [&](const char* key) -> const json& {
        auto it = j.find(key);
        if (it == j.end()) throw std::invalid_argument(std::string("missing key '") + key + "'");
        return *it;
    };
    auto as_int = [](const json& v, const char* what) {
        if (!v.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
        return v.get<int>();
    };

    Paper paper;
    const auto& id = require("paper_id");
    if (!id.is_string()) throw std::invalid_argument("paper_id must be a string");
    paper.paper_id = id.get<std::string>();
    paper.pub_year = as_int(require("pub_year"), "pub_year");

    const bool has_ids = j.contains("author_ids");
    const bool has_count = j.contains("author_count");
    if (!has_ids && !has_count) throw std::invalid_argument("one of author_ids/author_count is required");
    if (has_ids) {
        const auto& ids = j["author_ids"];
        if (!ids.is_array() || ids.empty()) throw std::invalid_argument("author_ids must be a non-empty array");
        for (const auto& a : ids) {
            if (!a.is_string()) throw std::invalid_argument("author_ids entries must be strings");
            paper.author_ids.push_back(a.get<std::string>());
        }
        paper.author_count = static_cast<int>(paper.author_ids.size());
    }
    if (has_count) {
        int count = as_int(j["author_count"], "author_count");
        if (has_ids && count != paper.author_count) {
            throw std::invalid_argument("author_count disagrees with author_ids");
        }
        paper.author_count = count;
    }

    const auto& years = require("citing_years");
    if (!years.is_array()) throw std::invalid_argument("citing_years must be an array");
    paper.citing_years.reserve(years.size());
    for (const auto& y : years) paper.citing_years.push_back(as_int(y, "citing_years entry"));
    return paper;
}

}  // namespace

Corpus ingest_corpus(std::istream& source) {
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        try {
            corpus.add(parse_record(line));
        } catch (const json::exception& e) {
            throw CorpusError(line_no, std::string("malformed record: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw CorpusError(line_no, e.what());
        }
    }
    return corpus;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& [id, paper] : corpus.papers()) {
        nlohmann::ordered_json j;
        j["paper_id"] = paper.paper_id;
        j["pub_year"] = paper.pub_year;
        if (paper.author_ids.empty()) {
            j["author_count"] = paper.author_count;
        } else {
            j["author_ids"] = paper.author_ids;
        }
        j["citing_years"] = paper.citing_years;
        out << j.dump() << '\n';
    }
}

double AuthorRecord::mean_coauthors() const {
    if (papers.empty()) throw std::invalid_argument("author " + author_id + " has no papers");
    double total = 0.0;
    for (const auto& p : papers) total += p.author_count - 1;
    return total / static_cast<double>(papers.size());
}

AuthorRecord build_author_record(const Corpus& corpus, std::string_view author_id, int window_years) {
    if (window_years < 1) throw std::invalid_argument("window_years must be >= 1");
    auto it = corpus.author_index().find(std::string(author_id));
    if (it == corpus.author_index().end() || it->second.empty()) {
        throw std::out_of_range("unknown author " + std::string(author_id));
    }

    std::vector<const Paper*> papers;
    papers.reserve(it->second.size());
    for (const auto& pid : it->second) papers.push_back(corpus.find(pid));

    AuthorRecord record;
    record.author_id = std::string(author_id);
    record.window_years = window_years;
    record.first_year = (*std::min_element(papers.begin(), papers.end(), [](const Paper* a, const Paper* b) {
                            return a->pub_year < b->pub_year;
                        }))->pub_year;
    const int last = record.last_year();

    for (const Paper* p : papers) {
        if (p->pub_year > last) continue;
        auto cites = std::count_if(p->citing_years.begin(), p->citing_years.end(), [last](int y) { return y <= last; });
        record.papers.push_back({p->paper_id, p->pub_year, p->author_count, static_cast<long>(cites)});
    }
    std::sort(record.papers.begin(), record.papers.end(), [](const WindowedPaper& a, const WindowedPaper& b) {
        return std::tie(a.pub_year, a.paper_id) < std::tie(b.pub_year, b.paper_id);
    });
    return record;
}

bool passes(const AuthorRecord& record, const FilterSpec& spec) {
    const double mean = record.mean_coauthors();
    if (!(mean > spec.mean_coauthors_min && mean < spec.mean_coauthors_max)) return false;
    if (spec.max_start_year && record.first_year > *spec.max_start_year) return false;
    if (spec.hard_mean_coauthor_cap && mean > *spec.hard_mean_coauthor_cap) return false;
    return true;
}

std::vector<AuthorRecord> filter_cohort(std::span<const AuthorRecord> records, const FilterSpec& spec) {
    if (!(spec.mean_coauthors_min < spec.mean_coauthors_max)) {
        throw std::invalid_argument("mean_coauthors_min must be below mean_coauthors_max");
    }
    std::vector<AuthorRecord> kept;
    std::copy_if(records.begin(), records.end(), std::back_inserter(kept),
                 [&](const AuthorRecord& r) { return passes(r, spec); });
    return kept;
}

}  // namespace biblio
