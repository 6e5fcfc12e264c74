#include "biblio/commands.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "biblio/expectation.hpp"
#include "biblio/indicators.hpp"
#include "biblio/stats.hpp"
#include "biblio/synth.hpp"
#include "biblio/tables.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace biblio::cli {

namespace {

enum class LogLevel { quiet = 0, warn = 1, info = 2, debug = 3 };

// BIBLIO_BENCH_LOG: quiet|warn|info|debug or 0..3; default warn.
LogLevel log_level() {
    const char* env = std::getenv("BIBLIO_BENCH_LOG");
    if (env == nullptr) return LogLevel::warn;
    const std::string v(env);
    if (v == "quiet" || v == "0") return LogLevel::quiet;
    if (v == "info" || v == "2") return LogLevel::info;
    if (v == "debug" || v == "3") return LogLevel::debug;
    return LogLevel::warn;
}

void log(std::ostream& err, LogLevel level, const std::string& msg) {
    if (level > log_level()) return;
    static constexpr std::array<const char*, 4> tags = {"", "warning", "info", "debug"};
    err << "biblio: " << tags[static_cast<int>(level)] << ": " << msg << '\n';
}

void fail(std::ostream& err, const std::string& msg) { err << "biblio: error: " << msg << '\n'; }

/// Collects outputs under temporary names; commit() renames them into place,
/// otherwise the destructor deletes them.
class StagedOutputs {
public:
    StagedOutputs() = default;
    StagedOutputs(const StagedOutputs&) = delete;
    StagedOutputs& operator=(const StagedOutputs&) = delete;
    ~StagedOutputs() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& [final_path, tmp] : files_) fs::remove(tmp, ec);
    }

    std::ofstream open(const fs::path& final_path) {
        fs::path tmp = final_path;
        tmp += ".partial";
        files_.emplace_back(final_path, tmp);
        if (final_path.has_parent_path()) fs::create_directories(final_path.parent_path());
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + final_path.string() + " for writing");
        return out;
    }

    fs::path staged(const fs::path& final_path) const {
        for (const auto& [f, tmp] : files_) {
            if (f == final_path) return tmp;
        }
        throw std::logic_error("not staged: " + final_path.string());
    }

    void commit() {
        for (const auto& [final_path, tmp] : files_) fs::rename(tmp, final_path);
        committed_ = true;
    }

private:
    std::vector<std::pair<fs::path, fs::path>> files_;
    bool committed_ = false;
};

void close_checked(std::ofstream& out, const fs::path& path) {
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::ifstream open_input(const fs::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(std::string("cannot read ") + what + " " + path.string());
    return in;
}

Corpus load_corpus(const fs::path& path) {
    auto in = open_input(path, "corpus");
    try {
        return ingest_corpus(in);
    } catch (const CorpusError& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

ojson input_entry(const fs::path& path) { return {{"path", path.string()}, {"sha256", file_sha256(path)}}; }

ojson base_manifest(const char* command) {
    ojson m;
    m["tool"] = "biblio";
    m["tool_version"] = kToolVersion;
    m["command"] = command;
    return m;
}

void write_manifest(StagedOutputs& staged, const fs::path& primary_output, const ojson& manifest) {
    const auto path = manifest_path(primary_output);
    auto out = staged.open(path);
    out << manifest.dump(2) << '\n';
    close_checked(out, path);
}

ojson output_entry(const StagedOutputs& staged, const fs::path& path) {
    return {{"path", path.string()}, {"sha256", file_sha256(staged.staged(path))}};
}

template <typename T>
ojson optional_json(const std::optional<T>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

std::optional<int> optional_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<int>();
}

int generate_from_config(const SynthConfig& config, const fs::path& config_source, const fs::path& out_path,
                         std::ostream& err) {
    const SyntheticCorpus synthetic = generate_corpus(config);
    StagedOutputs staged;

    auto corpus_out = staged.open(out_path);
    write_corpus(corpus_out, synthetic.corpus);
    close_checked(corpus_out, out_path);

    auto write_ids = [&](const char* suffix, const std::vector<std::string>& ids) {
        fs::path path = out_path;
        path += suffix;
        auto out = staged.open(path);
        for (const auto& id : ids) out << id << '\n';
        close_checked(out, path);
        return path;
    };
    const auto stars_path = write_ids(".stars.txt", synthetic.star_ids);
    const auto control_path = write_ids(".control.txt", synthetic.control_ids);

    ojson m = base_manifest("generate");
    m["parameters"] = {{"config", config_source.string()}, {"out", out_path.string()}};
    m["config"] = to_json(config);
    m["outputs"] = {{"corpus", output_entry(staged, out_path)},
                    {"stars", output_entry(staged, stars_path)},
                    {"control", output_entry(staged, control_path)}};
    m["corpus_checksum"] = file_sha256(staged.staged(out_path));
    m["star_ids"] = synthetic.star_ids;
    m["control_ids"] = synthetic.control_ids;
    write_manifest(staged, out_path, m);
    staged.commit();

    log(err, LogLevel::info,
        "wrote " + std::to_string(synthetic.corpus.size()) + " papers to " + out_path.string());
    return 0;
}

std::vector<std::string> read_author_list(const fs::path& path) {
    auto in = open_input(path, "author list");
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) ids.insert(line);
    }
    return {ids.begin(), ids.end()};
}

ojson filter_json(const FilterSpec& f) {
    return {{"coauthor_min", f.mean_coauthors_min},
            {"coauthor_max", f.mean_coauthors_max},
            {"max_start_year", optional_json(f.max_start_year)},
            {"hard_coauthor_cap", optional_json(f.hard_mean_coauthor_cap)}};
}

}  // namespace

fs::path manifest_path(const fs::path& output) {
    fs::path p = output;
    p += ".manifest.json";
    return p;
}

fs::path default_boxplot_path(const fs::path& output) {
    fs::path p = output;
    p += ".boxplot.tsv";
    return p;
}

std::string file_sha256(const fs::path& path) {
    auto in = open_input(path, "file");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

int run_generate(const GenerateParams& params, std::ostream& err) {
    try {
        nlohmann::json j;
        auto in = open_input(params.config, "config");
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("config " + params.config.string() + " is not valid JSON: " + e.what());
        }
        return generate_from_config(synth_config_from_json(j), params.config, params.out, err);
    } catch (const std::exception& e) {
        fail(err, e.what());
        return 1;
    }
}

int run_fit(const FitParams& params, std::ostream& err) {
    try {
        const Corpus corpus = load_corpus(params.corpus);
        FitOptions options;
        options.year_range = {params.year_min, params.year_max};
        options.min_papers_per_year = params.min_papers;
        options.windows = params.windows;
        options.floor = params.floor;
        const auto histories = citation_histories(corpus, params.windows, params.census_year);
        const ExpectationModel model = fit_expectation_model(histories, options);

        StagedOutputs staged;
        auto out = staged.open(params.out);
        write_model(out, model);
        close_checked(out, params.out);

        ojson m = base_manifest("fit");
        m["parameters"] = {{"corpus", params.corpus.string()},  {"out", params.out.string()},
                           {"year_min", params.year_min},       {"year_max", params.year_max},
                           {"min_papers", params.min_papers},   {"windows", params.windows},
                           {"floor", params.floor},             {"census_year", optional_json(params.census_year)}};
        m["inputs"] = {{"corpus", input_entry(params.corpus)}};
        m["outputs"] = {{"model", output_entry(staged, params.out)}};
        m["corpus_checksum"] = m["inputs"]["corpus"]["sha256"];
        write_manifest(staged, params.out, m);
        staged.commit();
        for (int w = 1; w <= model.windows(); ++w) {
            const auto& f = model.fit(w);
            log(err, LogLevel::info,
                "window " + std::to_string(w) + ": slope " + format_number(f.slope) + ", intercept " +
                    format_number(f.intercept) + ", " + std::to_string(f.n_points) + " papers");
        }
        return 0;
    } catch (const InsufficientData& e) {
        fail(err, e.what());
        return 1;
    } catch (const std::exception& e) {
        fail(err, e.what());
        return 1;
    }
}

int run_indicators(const IndicatorsParams& params, std::ostream& err) {
    try {
        const Corpus corpus = load_corpus(params.corpus);
        auto model_in = open_input(params.model, "model");
        const ExpectationModel model = read_model(model_in);
        if (params.windows < 1) throw std::invalid_argument("--windows must be >= 1");
        if (model.windows() < params.windows) {
            throw std::invalid_argument("model window mismatch: model covers " + std::to_string(model.windows()) +
                                        " window(s), author windows need " + std::to_string(params.windows));
        }

        std::vector<std::string> authors;
        if (params.authors) {
            authors = read_author_list(*params.authors);
            for (const auto& id : authors) {
                if (!corpus.has_author(id)) throw std::invalid_argument("unknown author reference '" + id + "'");
            }
        } else {
            for (const auto& [id, papers] : corpus.author_index()) authors.push_back(id);
        }

        std::vector<AuthorRecord> records;
        records.reserve(authors.size());
        for (const auto& id : authors) records.push_back(build_author_record(corpus, id, params.windows));
        const auto kept = filter_cohort(records, params.filter);
        log(err, LogLevel::info,
            std::to_string(kept.size()) + " of " + std::to_string(records.size()) + " authors pass the cohort filter");
        if (kept.empty()) log(err, LogLevel::warn, "no author passes the cohort filter; writing an empty table");

        std::vector<AuthorIndicators> rows;
        rows.reserve(kept.size());
        for (const auto& r : kept) rows.push_back({r.author_id, indicator_vector(r, model)});

        StagedOutputs staged;
        auto out = staged.open(params.out);
        write_indicator_table(out, rows, params.precision);
        close_checked(out, params.out);

        ojson m = base_manifest("indicators");
        m["parameters"] = {{"corpus", params.corpus.string()},
                           {"model", params.model.string()},
                           {"out", params.out.string()},
                           {"authors", params.authors ? ojson(params.authors->string()) : ojson(nullptr)},
                           {"windows", params.windows},
                           {"filter", filter_json(params.filter)},
                           {"precision", optional_json(params.precision)}};
        m["inputs"] = {{"corpus", input_entry(params.corpus)}, {"model", input_entry(params.model)}};
        if (params.authors) m["inputs"]["authors"] = input_entry(*params.authors);
        m["outputs"] = {{"indicators", output_entry(staged, params.out)}};
        m["corpus_checksum"] = m["inputs"]["corpus"]["sha256"];
        m["row_count"] = rows.size();
        write_manifest(staged, params.out, m);
        staged.commit();
        return 0;
    } catch (const std::exception& e) {
        fail(err, e.what());
        return 1;
    }
}

int run_compare(const CompareParams& params, std::ostream& err) {
    try {
        auto load = [](const fs::path& path, const char* what) {
            auto in = open_input(path, what);
            auto rows = read_indicator_table(in);
            if (rows.empty()) throw std::invalid_argument(std::string(what) + " table " + path.string() + " is empty");
            std::vector<IndicatorVector> vectors;
            for (auto& r : rows) vectors.push_back(r.values);
            return vectors;
        };
        const auto stars = load(params.stars, "stars");
        const auto control = load(params.control, "control");
        const ComparisonTable table = compare_cohorts(stars, control);

        // boxplots follow the rank order of the table
        std::vector<const ComparisonRow*> by_rank;
        for (const auto& row : table.rows) by_rank.push_back(&row);
        std::sort(by_rank.begin(), by_rank.end(), [](auto* a, auto* b) { return a->rank < b->rank; });
        std::vector<BoxplotSummary> boxes;
        for (const auto* row : by_rank) {
            const std::size_t k = indicator_index(row->indicator);
            for (const auto& [name, cohort] : {std::pair{"stars", &stars}, std::pair{"control", &control}}) {
                std::vector<double> values;
                for (const auto& v : *cohort) values.push_back(v.values()[k]);
                boxes.push_back(boxplot_summary(name, row->indicator, values));
            }
        }

        const fs::path box_path = params.boxplot_out.value_or(default_boxplot_path(params.out));
        StagedOutputs staged;
        auto out = staged.open(params.out);
        write_comparison_table(out, table, params.precision);
        close_checked(out, params.out);
        auto box_out = staged.open(box_path);
        write_boxplot_table(box_out, boxes, params.precision);
        close_checked(box_out, box_path);

        ojson m = base_manifest("compare");
        m["parameters"] = {{"stars", params.stars.string()},
                           {"control", params.control.string()},
                           {"out", params.out.string()},
                           {"boxplot_out", box_path.string()},
                           {"precision", optional_json(params.precision)}};
        m["inputs"] = {{"stars", input_entry(params.stars)}, {"control", input_entry(params.control)}};
        m["outputs"] = {{"comparison", output_entry(staged, params.out)}, {"boxplot", output_entry(staged, box_path)}};
        write_manifest(staged, params.out, m);
        staged.commit();
        return 0;
    } catch (const std::exception& e) {
        fail(err, e.what());
        return 1;
    }
}

int run_replay(const fs::path& manifest, std::ostream& err) {
    nlohmann::json m;
    try {
        auto in = open_input(manifest, "manifest");
        in >> m;
        const auto command = m.at("command").get<std::string>();
        const auto& p = m.at("parameters");
        if (command == "generate") {
            return generate_from_config(synth_config_from_json(m.at("config")), p.at("config").get<std::string>(),
                                        p.at("out").get<std::string>(), err);
        }
        if (command == "fit") {
            FitParams f;
            f.corpus = p.at("corpus").get<std::string>();
            f.out = p.at("out").get<std::string>();
            f.year_min = p.at("year_min").get<int>();
            f.year_max = p.at("year_max").get<int>();
            f.min_papers = p.at("min_papers").get<std::size_t>();
            f.windows = p.at("windows").get<int>();
            f.floor = p.at("floor").get<double>();
            f.census_year = optional_int(p, "census_year");
            return run_fit(f, err);
        }
        if (command == "indicators") {
            IndicatorsParams ip;
            ip.corpus = p.at("corpus").get<std::string>();
            ip.model = p.at("model").get<std::string>();
            ip.out = p.at("out").get<std::string>();
            if (!p.at("authors").is_null()) ip.authors = p.at("authors").get<std::string>();
            ip.windows = p.at("windows").get<int>();
            const auto& f = p.at("filter");
            ip.filter.mean_coauthors_min = f.at("coauthor_min").get<double>();
            ip.filter.mean_coauthors_max = f.at("coauthor_max").get<double>();
            ip.filter.max_start_year = optional_int(f, "max_start_year");
            if (!f.at("hard_coauthor_cap").is_null()) ip.filter.hard_mean_coauthor_cap = f.at("hard_coauthor_cap").get<double>();
            ip.precision = optional_int(p, "precision");
            return run_indicators(ip, err);
        }
        if (command == "compare") {
            CompareParams cp;
            cp.stars = p.at("stars").get<std::string>();
            cp.control = p.at("control").get<std::string>();
            cp.out = p.at("out").get<std::string>();
            cp.boxplot_out = p.at("boxplot_out").get<std::string>();
            cp.precision = optional_int(p, "precision");
            return run_compare(cp, err);
        }
        throw std::invalid_argument("manifest names unknown command '" + command + "'");
    } catch (const std::exception& e) {
        fail(err, manifest.string() + ": " + e.what());
        return 1;
    }
}

}  // namespace biblio::cli
