// biblio: author-level bibliometric indicators and cohort comparison.
//
//   biblio generate   --seed-config cfg.json --out corpus.jsonl
//   biblio fit        --corpus corpus.jsonl --out model.json [--year-min --year-max --min-papers --windows]
//   biblio indicators --corpus corpus.jsonl --model model.json --out vectors.tsv [--authors ids.txt] [filters]
//   biblio compare    --stars stars.tsv --control control.tsv --out table.tsv
//   biblio replay     --manifest table.tsv.manifest.json

#include <iostream>

#include <CLI11.hpp>

#include "biblio/commands.hpp"

using namespace biblio::cli;

int main(int argc, char** argv) {
    CLI::App app{"Author-level bibliometric indicators and cohort comparison"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    GenerateParams gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic two-cohort corpus");
    generate->add_option("--seed-config", gen.config, "JSON generator config (must contain seed)")->required();
    generate->add_option("--out", gen.out, "Corpus output path")->required();

    FitParams fit;
    std::optional<int> census_year;
    auto* fit_cmd = app.add_subcommand("fit", "Fit the expected-citation model");
    fit_cmd->add_option("--corpus", fit.corpus)->required();
    fit_cmd->add_option("--out", fit.out, "Model output path")->required();
    fit_cmd->add_option("--year-min", fit.year_min)->capture_default_str();
    fit_cmd->add_option("--year-max", fit.year_max)->capture_default_str();
    fit_cmd->add_option("--min-papers", fit.min_papers, "Minimum papers per publication year")->capture_default_str();
    fit_cmd->add_option("--windows", fit.windows, "Number of citation windows W")->capture_default_str();
    fit_cmd->add_option("--floor", fit.floor, "Lower bound on expected citations")->capture_default_str();
    fit_cmd->add_option("--census-year", census_year, "Last year with complete citation data");

    IndicatorsParams ind;
    std::optional<std::string> authors;
    std::optional<int> max_start_year = 1998;
    std::optional<double> hard_cap;
    bool no_start_filter = false;
    auto* indicators = app.add_subcommand("indicators", "Compute the 17 indicators per author");
    indicators->add_option("--corpus", ind.corpus)->required();
    indicators->add_option("--model", ind.model)->required();
    indicators->add_option("--out", ind.out)->required();
    indicators->add_option("--authors", authors, "File with one author id per line");
    indicators->add_option("--windows", ind.windows, "Publishing years per author")->capture_default_str();
    indicators->add_option("--coauthor-min", ind.filter.mean_coauthors_min, "Exclusive lower bound, mean co-authors")
        ->capture_default_str();
    indicators->add_option("--coauthor-max", ind.filter.mean_coauthors_max, "Exclusive upper bound, mean co-authors")
        ->capture_default_str();
    auto* start_opt = indicators->add_option("--max-start-year", max_start_year, "Latest first publishing year")
                          ->capture_default_str();
    indicators->add_flag("--no-start-year-filter", no_start_filter)->excludes(start_opt);
    indicators->add_option("--coauthor-cap", hard_cap, "Inclusive cap on mean co-authors");
    indicators->add_option("--precision", ind.precision, "Round output to this many decimals");

    CompareParams cmp;
    std::optional<std::string> boxplot_out;
    auto* compare = app.add_subcommand("compare", "Compare star and control indicator tables");
    compare->add_option("--stars", cmp.stars)->required();
    compare->add_option("--control", cmp.control)->required();
    compare->add_option("--out", cmp.out)->required();
    compare->add_option("--boxplot-out", boxplot_out, "Boxplot summary path (default <out>.boxplot.tsv)");
    compare->add_option("--precision", cmp.precision, "Round output to this many decimals");

    std::string manifest;
    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("--manifest", manifest)->required();

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) return run_generate(gen, std::cerr);
    if (fit_cmd->parsed()) {
        fit.census_year = census_year;
        return run_fit(fit, std::cerr);
    }
    if (indicators->parsed()) {
        if (authors) ind.authors = *authors;
        ind.filter.max_start_year = no_start_filter ? std::nullopt : max_start_year;
        ind.filter.hard_mean_coauthor_cap = hard_cap;
        return run_indicators(ind, std::cerr);
    }
    if (compare->parsed()) {
        if (boxplot_out) cmp.boxplot_out = *boxplot_out;
        return run_compare(cmp, std::cerr);
    }
    if (replay->parsed()) return run_replay(manifest, std::cerr);
    return 2;
}
