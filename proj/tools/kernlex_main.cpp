// kernlex: batch corpus statistics driver.
//
// Subcommands: freq, zipf, drift, style, monkey. Every run writes its report
// files plus config.echo and manifest.json into --out; results are identical
// for identical configuration and seed, regardless of --threads.

#include "kernlex/drift.hpp"
#include "kernlex/error.hpp"
#include "kernlex/frequency_table.hpp"
#include "kernlex/monkey.hpp"
#include "kernlex/parallel.hpp"
#include "kernlex/ranking.hpp"
#include "kernlex/readers.hpp"
#include "kernlex/report.hpp"
#include "kernlex/stylometry.hpp"
#include "kernlex/tokenizer.hpp"
#include "kernlex/zipf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_input = 3;
constexpr int exit_analysis = 4;
constexpr int exit_internal = 5;

struct run_options {
    std::vector<std::string> inputs;
    std::string format = "text";
    std::string config_path;
    std::string out_dir;
    unsigned threads = 1;
    std::uint64_t seed = 0;

    kernlex::token_policy policy;
    bool keep_case = false;
    bool keep_numeric = false;
    bool keep_punctuation = false;
    std::string boundary = "unicode_words";

    kernlex::google_column_map google_columns;
    std::string google_columns_text;
    kernlex::year_range years;
    std::size_t leipzig_text_column = 1;
    std::string leipzig_delimiter = "\t";
    bool strict = false;

    std::size_t kernel_size = 3000;
    std::string intervals = "1,2,4,8,16,32,64";
    int segments = 2;
    std::string grid; // "log:LO:HI:N" or comma-separated ranks
    std::uint32_t fit_lo = 1;
    std::uint32_t fit_hi = 0; // 0: whole range
    bool truncate_tail = false;
    std::size_t smoothing_span = 5;

    std::string manifest_path;
    std::string metric = "one_minus_pearson";
    std::uint64_t permutations = 999;
    std::uint64_t min_work_tokens = 2000;

    unsigned alphabet_size = 26;
    double space_probability = 0.18;
    std::uint64_t tokens = 1000000;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            values.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw kernlex::config_error("not an integer list: " + text);
        }
    }
    if (values.empty()) throw kernlex::config_error("empty integer list: " + text);
    return values;
}

// Applies the JSON config file; command-line flags were already parsed and
// win over config values, so only fields left at their defaults are filled.
void apply_config_file(run_options& opt, const CLI::App& app) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in.is_open()) throw kernlex::config_error("cannot open config file: " + opt.config_path);
    auto fresh = [&](const std::string& flag) {
        const CLI::Option* o = app.get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    try {
        json cfg;
        in >> cfg;
        if (cfg.contains("policy")) {
            const auto& p = cfg["policy"];
            if (p.contains("lowercase_fold") && fresh("--keep-case")) {
                opt.keep_case = !p["lowercase_fold"].get<bool>();
            }
            if (p.contains("drop_numeric") && fresh("--keep-numeric")) {
                opt.keep_numeric = !p["drop_numeric"].get<bool>();
            }
            if (p.contains("drop_punctuation") && fresh("--keep-punctuation")) {
                opt.keep_punctuation = !p["drop_punctuation"].get<bool>();
            }
            if (p.contains("min_token_length") && fresh("--min-token-length")) {
                opt.policy.min_token_length = p["min_token_length"].get<std::size_t>();
            }
            if (p.contains("word_boundary_rule") && fresh("--word-boundary")) {
                opt.boundary = p["word_boundary_rule"].get<std::string>();
            }
        }
        if (cfg.contains("google_columns") && fresh("--google-columns")) {
            const auto& c = cfg["google_columns"];
            opt.google_columns.word = c.value("word", 0);
            opt.google_columns.year = c.value("year", 1);
            opt.google_columns.count = c.value("count", 2);
        }
        if (cfg.contains("year_range") && fresh("--year-range")) {
            opt.years.lo = cfg["year_range"].value("lo", 1500);
            opt.years.hi = cfg["year_range"].value("hi", 2009);
        }
        if (cfg.contains("leipzig")) {
            const auto& l = cfg["leipzig"];
            if (l.contains("text_column") && fresh("--text-column")) {
                opt.leipzig_text_column = l["text_column"].get<std::size_t>();
            }
            if (l.contains("delimiter") && fresh("--delimiter")) {
                opt.leipzig_delimiter = l["delimiter"].get<std::string>();
            }
        }
        if (cfg.contains("strict") && fresh("--strict")) opt.strict = cfg["strict"].get<bool>();
    } catch (const json::exception& e) {
        throw kernlex::config_error("bad config file: " + std::string(e.what()));
    }
}

void finalize_policy(run_options& opt) {
    opt.policy.lowercase_fold = !opt.keep_case;
    opt.policy.drop_numeric = !opt.keep_numeric;
    opt.policy.drop_punctuation = !opt.keep_punctuation;
    opt.policy.boundary = kernlex::boundary_rule_from_string(opt.boundary);
    if (opt.leipzig_delimiter.size() != 1) {
        throw kernlex::config_error("leipzig delimiter must be a single character");
    }
    if (!opt.google_columns_text.empty()) {
        auto parts = parse_int_list(opt.google_columns_text);
        if (parts.size() != 3 || parts[0] < 0 || parts[1] < 0 || parts[2] < 0) {
            throw kernlex::config_error("--google-columns takes WORD,YEAR,COUNT positions");
        }
        opt.google_columns.word = static_cast<std::size_t>(parts[0]);
        opt.google_columns.year = static_cast<std::size_t>(parts[1]);
        opt.google_columns.count = static_cast<std::size_t>(parts[2]);
    }
}

json policy_json(const kernlex::token_policy& p) {
    return json{{"lowercase_fold", p.lowercase_fold},
                {"drop_numeric", p.drop_numeric},
                {"drop_punctuation", p.drop_punctuation},
                {"min_token_length", p.min_token_length},
                {"word_boundary_rule", kernlex::to_string(p.boundary)}};
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
    if (!out) throw kernlex::input_error("cannot write " + path.string());
}

void write_config_echo(const kernlex::output_stage& stage, const std::string& subcommand,
                       json settings) {
    settings["subcommand"] = subcommand;
    write_text_file(stage.file("config.echo"), settings.dump(2) + "\n");
}

json ingest_stats_json(const kernlex::ingest_stats& stats) {
    return json{{"lines_total", stats.lines_total},
                {"malformed_lines", stats.malformed_lines},
                {"records_emitted", stats.records_emitted},
                {"dropped_by_policy", stats.dropped_by_policy},
                {"dropped_by_year_filter", stats.dropped_by_year_filter}};
}

// Counts one input file into a frequency table with whatever reader the
// format calls for; google 1-gram counts pool every year inside the filter.
kernlex::frequency_table count_one_input(const run_options& opt, const std::string& path,
                                         kernlex::ingest_stats& stats) {
    kernlex::frequency_table table;
    auto in = kernlex::open_input(path);
    if (opt.format == "text") {
        kernlex::read_plain_text(*in, opt.policy, [&](std::string&& w) { table.add(w); });
    } else if (opt.format == "leipzig") {
        stats = kernlex::read_leipzig_sentences(*in, opt.leipzig_text_column,
                                                opt.leipzig_delimiter[0], opt.policy,
                                                [&](std::string&& w) { table.add(w); });
    } else if (opt.format == "google1gram") {
        stats = kernlex::read_google_1grams(
            *in, opt.google_columns, opt.years, opt.policy, opt.strict,
            [&](kernlex::yeared_count&& rec) { table.add(rec.word, rec.count); });
    } else {
        throw kernlex::config_error("unknown input format: " + opt.format);
    }
    return table;
}

kernlex::frequency_table count_inputs(const run_options& opt, json& stats_out) {
    if (opt.inputs.empty()) throw kernlex::config_error("no --input given");
    std::vector<kernlex::frequency_table> tables(opt.inputs.size());
    std::vector<kernlex::ingest_stats> stats(opt.inputs.size());
    kernlex::parallel_for(opt.inputs.size(), opt.threads,
                          [&](std::size_t i) { tables[i] = count_one_input(opt, opt.inputs[i], stats[i]); });
    kernlex::frequency_table merged;
    for (auto& t : tables) merged.merge(t);
    stats_out = json::array();
    for (std::size_t i = 0; i < opt.inputs.size(); ++i) {
        json s = ingest_stats_json(stats[i]);
        s["input"] = opt.inputs[i];
        s["tokens"] = tables[i].total_tokens();
        stats_out.push_back(std::move(s));
    }
    return merged;
}

// --threads is a performance knob with no effect on results, so it stays out
// of the echoed config: reruns of one configuration hash identically no
// matter the thread budget.
json common_settings(const run_options& opt) {
    return json{{"inputs", opt.inputs},
                {"format", opt.format},
                {"policy", policy_json(opt.policy)},
                {"seed", opt.seed},
                {"out", opt.out_dir}};
}

void run_freq(const run_options& opt) {
    kernlex::output_stage stage(opt.out_dir);
    json per_input;
    auto table = count_inputs(opt, per_input);
    {
        std::ofstream out(stage.file("table.tsv"), std::ios::binary);
        kernlex::write_table_tsv(table, out);
        if (!out) throw kernlex::input_error("cannot write table.tsv");
    }
    json summary{{"total_tokens", table.total_tokens()},
                 {"vocabulary_size", table.vocabulary_size()},
                 {"inputs", per_input}};
    write_text_file(stage.file("summary.json"), summary.dump(2) + "\n");
    write_config_echo(stage, "freq", common_settings(opt));
    stage.commit();
}

std::vector<std::uint32_t> resolve_grid(const run_options& opt,
                                        const kernlex::ranked_distribution& ranked) {
    if (opt.grid.empty()) return kernlex::default_breakpoint_grid(ranked);
    if (opt.grid.rfind("log:", 0) == 0) {
        auto parts = parse_int_list(opt.grid.substr(4));
        if (parts.size() != 3 || parts[0] < 1 || parts[1] < parts[0] || parts[2] < 1) {
            throw kernlex::config_error("--grid log form is log:LO,HI,POINTS");
        }
        return kernlex::log_spaced_grid(static_cast<std::uint32_t>(parts[0]),
                                        static_cast<std::uint32_t>(parts[1]),
                                        static_cast<std::size_t>(parts[2]));
    }
    std::vector<std::uint32_t> grid;
    for (int r : parse_int_list(opt.grid)) {
        if (r < 1) throw kernlex::config_error("grid ranks must be positive");
        grid.push_back(static_cast<std::uint32_t>(r));
    }
    return grid;
}

json fit_json(const kernlex::power_law_fit& fit) {
    return json{{"rank_lo", fit.rank_lo},   {"rank_hi", fit.rank_hi},
                {"exponent", fit.exponent}, {"log_intercept", fit.log_intercept},
                {"sse", fit.sse},           {"r_squared", fit.r_squared}};
}

void run_zipf(const run_options& opt) {
    kernlex::output_stage stage(opt.out_dir);
    json per_input;
    auto table = count_inputs(opt, per_input);
    auto ranked = kernlex::rank_table(table);
    std::uint32_t hi = opt.fit_hi == 0 ? static_cast<std::uint32_t>(ranked.size()) : opt.fit_hi;
    if (opt.truncate_tail) {
        std::uint32_t resolved = kernlex::last_rank_with_count_at_least(ranked, 2);
        if (resolved > 0) hi = std::min(hi, resolved);
    }
    auto grid = resolve_grid(opt, ranked);

    auto fit = kernlex::fit_segments(ranked, opt.segments, grid, opt.fit_lo, hi);
    double bend = kernlex::bending_score(ranked, grid, opt.fit_lo, hi);

    json report{{"total_tokens", table.total_tokens()},
                {"vocabulary_size", table.vocabulary_size()},
                {"fit_range", {opt.fit_lo, hi}},
                {"n_segments", opt.segments},
                {"total_sse", fit.total_sse},
                {"bending_score", bend},
                {"grid", grid},
                {"inputs", per_input}};
    report["segments"] = json::array();
    for (const auto& seg : fit.segments) report["segments"].push_back(fit_json(seg));
    report["breakpoints"] = json::array();
    for (std::size_t s = 1; s < fit.segments.size(); ++s) {
        report["breakpoints"].push_back(fit.segments[s].rank_lo);
    }
    write_text_file(stage.file("zipf.json"), report.dump(2) + "\n");

    {
        std::ofstream out(stage.file("rank_frequency.tsv"), std::ios::binary);
        kernlex::write_rank_frequency_tsv(ranked, fit.segments, out);
        if (!out) throw kernlex::input_error("cannot write rank_frequency.tsv");
    }
    {
        std::ofstream out(stage.file("word_lengths.tsv"), std::ios::binary);
        kernlex::write_word_length_tsv(
            kernlex::word_length_distribution(table, kernlex::length_weighting::by_token),
            kernlex::word_length_distribution(table, kernlex::length_weighting::by_type), out);
        if (!out) throw kernlex::input_error("cannot write word_lengths.tsv");
    }

    json settings = common_settings(opt);
    settings["segments"] = opt.segments;
    settings["grid"] = opt.grid.empty() ? "default" : opt.grid;
    settings["fit_range"] = {opt.fit_lo, hi};
    settings["truncate_tail"] = opt.truncate_tail;
    write_config_echo(stage, "zipf", settings);
    stage.commit();
}

kernlex::year_binned_corpus load_year_binned(const run_options& opt, const std::string& path) {
    kernlex::year_binned_corpus corpus;
    corpus.language_tag = std::filesystem::path(path).stem().string();
    auto in = kernlex::open_input(path);
    kernlex::read_google_1grams(*in, opt.google_columns, opt.years, opt.policy, opt.strict,
                                [&](kernlex::yeared_count&& rec) {
                                    corpus.bins[rec.year].add(rec.word, rec.count);
                                });
    return corpus;
}

void run_drift(const run_options& opt) {
    if (opt.format != "google1gram") {
        throw kernlex::config_error("drift expects --format google1gram");
    }
    if (opt.inputs.empty() || opt.inputs.size() > 2) {
        throw kernlex::config_error("drift takes one input (diachronic) or two (cross-variety)");
    }
    kernlex::output_stage stage(opt.out_dir);
    json settings = common_settings(opt);
    settings["kernel_size"] = opt.kernel_size;
    settings["year_range"] = {opt.years.lo, opt.years.hi};
    settings["smoothing_span"] = opt.smoothing_span;

    if (opt.inputs.size() == 1) {
        auto corpus = load_year_binned(opt, opt.inputs[0]);
        auto intervals = parse_int_list(opt.intervals);
        auto series = kernlex::drift_series(corpus, opt.kernel_size, intervals, opt.threads);
        {
            std::ofstream out(stage.file("drift_series.tsv"), std::ios::binary);
            kernlex::write_drift_tsv(series, out);
        }
        {
            std::ofstream out(stage.file("drift_series_smoothed.tsv"), std::ios::binary);
            kernlex::write_drift_smoothed_tsv(series, opt.smoothing_span, out);
        }
        json per_interval = json::array();
        std::size_t i = 0;
        while (i < series.size()) {
            std::size_t j = i;
            double cosine_sum = 0.0, spearman_sum = 0.0;
            std::size_t spearman_n = 0;
            while (j < series.size() && series[j].interval == series[i].interval) {
                cosine_sum += series[j].cosine;
                if (std::isfinite(series[j].spearman)) {
                    spearman_sum += series[j].spearman;
                    ++spearman_n;
                }
                ++j;
            }
            json row{{"interval", series[i].interval},
                     {"n_pairs", j - i},
                     {"mean_cosine", cosine_sum / static_cast<double>(j - i)}};
            row["mean_spearman"] =
                spearman_n > 0 ? json(spearman_sum / static_cast<double>(spearman_n)) : json();
            per_interval.push_back(std::move(row));
            i = j;
        }
        json report{{"language_tag", corpus.language_tag},
                    {"mode", "diachronic"},
                    {"n_points", series.size()},
                    {"per_interval", per_interval}};
        try {
            report["index_correlation"] = kernlex::index_correlation(series);
        } catch (const kernlex::analysis_error&) {
            // undefined on short or constant series; the series files stand
            report["index_correlation"] = nullptr;
        }
        write_text_file(stage.file("drift.json"), report.dump(2) + "\n");
        settings["intervals"] = intervals;
    } else {
        auto corpus_a = load_year_binned(opt, opt.inputs[0]);
        auto corpus_b = load_year_binned(opt, opt.inputs[1]);
        auto series =
            kernlex::cross_variety_series(corpus_a, corpus_b, opt.kernel_size, opt.threads);
        {
            std::ofstream out(stage.file("cross_variety.tsv"), std::ios::binary);
            kernlex::write_cross_variety_tsv(series, out);
        }
        {
            std::ofstream out(stage.file("cross_variety_smoothed.tsv"), std::ios::binary);
            kernlex::write_cross_variety_smoothed_tsv(series, opt.smoothing_span, out);
        }
        json report{{"mode", "cross_variety"},
                    {"variety_a", corpus_a.language_tag},
                    {"variety_b", corpus_b.language_tag},
                    {"n_years", series.size()},
                    {"first_year", series.front().year},
                    {"last_year", series.back().year}};
        write_text_file(stage.file("drift.json"), report.dump(2) + "\n");
    }
    write_config_echo(stage, "drift", settings);
    stage.commit();
}

void run_style(const run_options& opt) {
    if (opt.manifest_path.empty()) throw kernlex::config_error("style needs --manifest");
    std::ifstream manifest(opt.manifest_path);
    if (!manifest.is_open()) {
        throw kernlex::input_error("cannot open manifest: " + opt.manifest_path);
    }
    auto sources = kernlex::read_work_manifest(
        manifest, std::filesystem::path(opt.manifest_path).parent_path().string());

    kernlex::style_options style;
    style.k = opt.kernel_size;
    style.metric = kernlex::metric_from_string(opt.metric);
    style.n_permutations = opt.permutations;
    style.seed = opt.seed;
    style.min_work_tokens = opt.min_work_tokens;
    style.threads = opt.threads;
    style.policy = opt.policy;

    auto outcome = kernlex::style_report(sources, style);
    for (const auto& work : outcome.excluded_works) {
        std::cerr << "warning: work '" << work << "' is shorter than " << opt.min_work_tokens
                  << " tokens and was excluded\n";
    }

    kernlex::output_stage stage(opt.out_dir);
    json report{{"R", outcome.anosim.r},
                {"p_value", outcome.anosim.p_value},
                {"n_permutations", outcome.anosim.n_permutations},
                {"exact", outcome.anosim.exact},
                {"seed", outcome.anosim.seed},
                {"null", json{{"mean", outcome.anosim.null_mean},
                              {"sd", outcome.anosim.null_sd},
                              {"max", outcome.anosim.null_max}}},
                {"n_works", outcome.matrix.n},
                {"kernel_size", opt.kernel_size},
                {"metric", opt.metric},
                {"min_work_tokens", opt.min_work_tokens},
                {"excluded_works", outcome.excluded_works}};
    write_text_file(stage.file("anosim.json"), report.dump(2) + "\n");
    {
        std::ofstream out(stage.file("dissimilarity_matrix.tsv"), std::ios::binary);
        kernlex::write_matrix_tsv(outcome.matrix, out);
    }
    {
        std::ofstream out(stage.file("standard_profile.tsv"), std::ios::binary);
        kernlex::write_profile_tsv(outcome.profile, out);
    }
    json settings = common_settings(opt);
    settings["manifest"] = opt.manifest_path;
    settings["kernel_size"] = opt.kernel_size;
    settings["metric"] = opt.metric;
    settings["permutations"] = opt.permutations;
    settings["min_work_tokens"] = opt.min_work_tokens;
    write_config_echo(stage, "style", settings);
    stage.commit();
}

void run_monkey(const run_options& opt) {
    kernlex::monkey_config config{opt.alphabet_size, opt.space_probability, opt.tokens, opt.seed};
    kernlex::validate(config);
    kernlex::output_stage stage(opt.out_dir);
    kernlex::frequency_table table;
    {
        std::ofstream out(stage.file("corpus.txt"), std::ios::binary);
        std::uint64_t column = 0;
        kernlex::generate_monkey_text(config, [&](std::string&& w) {
            if (column > 0) out << (column % 16 == 0 ? '\n' : ' ');
            out << w;
            ++column;
            table.add(w);
        });
        out << '\n';
        if (!out) throw kernlex::input_error("cannot write corpus.txt");
    }
    json summary{{"tokens", table.total_tokens()},
                 {"vocabulary_size", table.vocabulary_size()},
                 {"alphabet_size", opt.alphabet_size},
                 {"space_probability", opt.space_probability},
                 {"seed", opt.seed}};
    write_text_file(stage.file("summary.json"), summary.dump(2) + "\n");
    json settings{{"alphabet_size", opt.alphabet_size},
                  {"space_probability", opt.space_probability},
                  {"tokens", opt.tokens},
                  {"seed", opt.seed},
                  {"out", opt.out_dir}};
    write_config_echo(stage, "monkey", settings);
    stage.commit();
}

void add_common_flags(CLI::App* cmd, run_options& opt, bool with_inputs = true) {
    if (with_inputs) {
        cmd->add_option("--input", opt.inputs, "input file (repeatable); gzip is transparent");
        cmd->add_option("--format", opt.format, "input format: text, leipzig, google1gram")
            ->check(CLI::IsMember({"text", "leipzig", "google1gram"}));
    }
    cmd->add_option("--config", opt.config_path, "JSON config file (flags win over it)");
    cmd->add_option("--out", opt.out_dir, "output directory")->required();
    cmd->add_option("--threads", opt.threads, "worker threads (results do not depend on this)");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_flag("--keep-case", opt.keep_case, "disable lowercase folding");
    cmd->add_flag("--keep-numeric", opt.keep_numeric, "keep purely numeric tokens");
    cmd->add_flag("--keep-punctuation", opt.keep_punctuation, "keep punctuation tokens");
    cmd->add_option("--min-token-length", opt.policy.min_token_length,
                    "minimum token length in codepoints");
    cmd->add_option("--word-boundary", opt.boundary, "unicode_words or whitespace_split")
        ->check(CLI::IsMember({"unicode_words", "whitespace_split"}));
    cmd->add_flag("--strict", opt.strict, "malformed input lines abort instead of being skipped");
}

void add_table_source_flags(CLI::App* cmd, run_options& opt) {
    cmd->add_option("--text-column", opt.leipzig_text_column, "leipzig: 0-based text column");
    cmd->add_option("--delimiter", opt.leipzig_delimiter, "leipzig: field delimiter");
    cmd->add_option("--google-columns", opt.google_columns_text,
                    "google1gram: WORD,YEAR,COUNT column positions (default 0,1,2)");
    cmd->add_option(
           "--year-range",
           [&opt](const std::vector<std::string>& values) {
               // return false on malformed input: CLI11 reports a usage error
               try {
                   auto parts = parse_int_list(values.back());
                   if (parts.size() != 2 || parts[0] > parts[1]) return false;
                   opt.years.lo = parts[0];
                   opt.years.hi = parts[1];
                   return true;
               } catch (const kernlex::config_error&) {
                   return false;
               }
           },
           "year filter LO,HI (default 1500,2009)")
        ->type_name("LO,HI");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus word-frequency statistics: rank-frequency fits, kernel lexicon drift, "
                 "frequency-deviation stylometry"};
    app.require_subcommand(1);

    run_options opt;

    CLI::App* freq = app.add_subcommand("freq", "count tokens into a frequency table");
    add_common_flags(freq, opt);
    add_table_source_flags(freq, opt);

    CLI::App* zipf = app.add_subcommand("zipf", "rank-frequency power-law and segmented fits");
    add_common_flags(zipf, opt);
    add_table_source_flags(zipf, opt);
    zipf->add_option("--segments", opt.segments, "number of fitted segments (1-3)")
        ->check(CLI::Range(1, 3));
    zipf->add_option("--grid", opt.grid, "breakpoint grid: log:LO,HI,N or rank,rank,...");
    zipf->add_option("--fit-lo", opt.fit_lo, "first rank of the fit range");
    zipf->add_option("--fit-hi", opt.fit_hi, "last rank of the fit range (0 = vocabulary)");
    zipf->add_flag("--truncate-tail", opt.truncate_tail,
                   "fit only up to the last rank with count >= 2 (sensitivity check)");

    CLI::App* drift = app.add_subcommand(
        "drift", "kernel-lexicon similarity across years (1 input) or varieties (2 inputs)");
    add_common_flags(drift, opt);
    add_table_source_flags(drift, opt);
    drift->add_option("--kernel-size", opt.kernel_size, "kernel lexicon size K");
    drift->add_option("--intervals", opt.intervals, "comma-separated year intervals");
    drift->add_option("--smoothing-span", opt.smoothing_span, "moving-average span (odd)");

    CLI::App* style = app.add_subcommand("style", "deviation-vector ANOSIM over an author manifest");
    add_common_flags(style, opt, /*with_inputs=*/false);
    style->add_option("--manifest", opt.manifest_path,
                      "work manifest: author_id<TAB>work_id<TAB>path");
    style->add_option("--kernel-size", opt.kernel_size, "kernel lexicon size K");
    style->add_option("--metric", opt.metric, "one_minus_pearson or euclidean")
        ->check(CLI::IsMember({"one_minus_pearson", "euclidean"}));
    style->add_option("--permutations", opt.permutations, "ANOSIM permutation count");
    style->add_option("--min-work-tokens", opt.min_work_tokens,
                      "exclude works shorter than this many tokens");

    CLI::App* monkey = app.add_subcommand("monkey", "generate a random-typing corpus");
    monkey->add_option("--out", opt.out_dir, "output directory")->required();
    monkey->add_option("--seed", opt.seed, "RNG seed");
    monkey->add_option("--alphabet-size", opt.alphabet_size, "letters in the alphabet (1-26)");
    monkey->add_option("--space-prob", opt.space_probability, "per-character space probability");
    monkey->add_option("--tokens", opt.tokens, "number of words to generate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        apply_config_file(opt, *cmd);
        finalize_policy(opt);
        if (cmd == freq) run_freq(opt);
        else if (cmd == zipf) run_zipf(opt);
        else if (cmd == drift) run_drift(opt);
        else if (cmd == style) run_style(opt);
        else if (cmd == monkey) run_monkey(opt);
        return exit_ok;
    } catch (const kernlex::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const kernlex::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const kernlex::analysis_error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return exit_analysis;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}
