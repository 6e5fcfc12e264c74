#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "biblio/corpus.hpp"

namespace biblio::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct GenerateParams {
    std::filesystem::path config;  // JSON synth config
    std::filesystem::path out;     // corpus; siblings .manifest.json, .stars.txt, .control.txt
};

struct FitParams {
    std::filesystem::path corpus;
    std::filesystem::path out;
    int year_min = 1995;
    int year_max = 2007;
    std::size_t min_papers = 100;
    int windows = 5;
    double floor = 1.0;
    std::optional<int> census_year;
};

struct IndicatorsParams {
    std::filesystem::path corpus;
    std::filesystem::path model;
    std::filesystem::path out;
    std::optional<std::filesystem::path> authors;  // one author id per line; default every indexed author
    int windows = 5;                                // years in each author's window
    FilterSpec filter;
    std::optional<int> precision;
};

struct CompareParams {
    std::filesystem::path stars;
    std::filesystem::path control;
    std::filesystem::path out;
    std::optional<std::filesystem::path> boxplot_out;  // default: <out>.boxplot.tsv
    std::optional<int> precision;
};

/// Every command returns a process exit status and reports problems on `err`.
/// Outputs are staged and only moved into place once all of them are written.
int run_generate(const GenerateParams& params, std::ostream& err);
int run_fit(const FitParams& params, std::ostream& err);
int run_indicators(const IndicatorsParams& params, std::ostream& err);
int run_compare(const CompareParams& params, std::ostream& err);

/// Re-runs the command recorded in a manifest written by one of the above.
int run_replay(const std::filesystem::path& manifest, std::ostream& err);

std::filesystem::path manifest_path(const std::filesystem::path& output);
std::filesystem::path default_boxplot_path(const std::filesystem::path& output);

/// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace biblio::cli
