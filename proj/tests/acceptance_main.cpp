// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Exercises the library against exact oracles and the bundled
// fixtures, and the CLI binary for end-to-end determinism.
//
// Usage: kernlex_acceptance --cli PATH --fixtures DIR --scratch DIR [--only N]

#include "kernlex/drift.hpp"
#include "kernlex/error.hpp"
#include "kernlex/frequency_table.hpp"
#include "kernlex/monkey.hpp"
#include "kernlex/ranking.hpp"
#include "kernlex/readers.hpp"
#include "kernlex/report.hpp"
#include "kernlex/stylometry.hpp"
#include "kernlex/tokenizer.hpp"
#include "kernlex/zipf.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace kernlex;

namespace {

struct context {
    std::string cli;
    fs::path fixtures;
    fs::path scratch;
    int only = 0;
};

struct check_failure {
    std::string message;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw check_failure{message};
}

std::string format_num(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

// ---------------------------------------------------------------------------
// shared fixture loading

frequency_table count_text_file(const fs::path& path) {
    frequency_table table;
    auto in = open_input(path.string());
    read_plain_text(*in, token_policy{}, [&](std::string&& w) { table.add(w); });
    return table;
}

const frequency_table& english_table(const context& ctx) {
    static frequency_table table = count_text_file(ctx.fixtures / "english" / "english_corpus.txt.gz");
    return table;
}

// ---------------------------------------------------------------------------
// criterion 1: Eq.1/Eq.2 implementations vs brute force, 10,000 random pairs

std::string criterion_1(const context&) {
    std::mt19937_64 rng(20240601);
    auto word = [](std::size_t id) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "w%06zu", id);
        return std::string(buf);
    };

    for (int iter = 0; iter < 10000; ++iter) {
        std::size_t na = 2 + rng() % 60;
        std::size_t nb = 2 + rng() % 60;
        std::set<std::size_t> ids_a, ids_b;
        while (ids_a.size() < na) ids_a.insert(rng() % 90);
        while (ids_b.size() < nb) ids_b.insert(rng() % 90);

        std::vector<kernel_entry> ma, mb;
        std::uint64_t ca = 100000, cb = 200000;
        std::uint32_t rank = 0;
        for (auto id : ids_a) ma.push_back({word(id), ++rank, ca -= 7, 0.0});
        rank = 0;
        for (auto id : ids_b) mb.push_back({word(id), ++rank, cb -= 11, 0.0});
        kernel_lexicon a(std::move(ma), na), b(std::move(mb), nb);

        // brute-force set intersection
        std::size_t inter = 0;
        for (const auto& x : a.members()) {
            for (const auto& y : b.members()) {
                if (x.word == y.word) ++inter;
            }
        }
        double cosine_oracle =
            static_cast<double>(inter) / std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
        require(std::abs(cosine_set_similarity(a, b) - cosine_oracle) <= 1e-12,
                "cosine deviates from brute force");

        if (inter < 2) continue;
        // brute-force rank difference sum over the shared set
        std::vector<std::pair<std::uint64_t, std::string>> sa, sb;
        for (const auto& x : a.members()) {
            for (const auto& y : b.members()) {
                if (x.word == y.word) {
                    sa.emplace_back(x.count, x.word);
                    sb.emplace_back(y.count, y.word);
                }
            }
        }
        std::sort(sa.rbegin(), sa.rend());
        std::sort(sb.rbegin(), sb.rend());
        double sum_d2 = 0.0;
        for (std::size_t i = 0; i < sa.size(); ++i) {
            for (std::size_t j = 0; j < sb.size(); ++j) {
                if (sa[i].second == sb[j].second) {
                    double d = static_cast<double>(i) - static_cast<double>(j);
                    sum_d2 += d * d;
                }
            }
        }
        double m = static_cast<double>(inter);
        double rho_oracle = 1.0 - 6.0 * sum_d2 / (m * (m * m - 1.0));
        auto got = spearman_rho(a, b);
        require(got.shared_words == inter, "shared word count mismatch");
        require(std::abs(got.rho - rho_oracle) <= 1e-12, "spearman deviates from brute force");
    }
    return "10000 random lexicon pairs, both indices exact to 1e-12";
}

// ---------------------------------------------------------------------------
// criterion 2: exact power-law recovery and planted breakpoint

std::string criterion_2(const context&) {
    for (double alpha : {-0.5, -1.0, -2.0}) {
        std::vector<double> values(1000);
        for (std::size_t i = 0; i < values.size(); ++i) {
            values[i] = 1000.0 * std::pow(static_cast<double>(i + 1), alpha);
        }
        auto fit = loglog_fit(values, 1, 1000);
        require(std::abs(fit.exponent - alpha) <= 1e-9,
                "exponent " + format_num(fit.exponent) + " not within 1e-9 of " + format_num(alpha));
        require(fit.r_squared >= 1.0 - 1e-12, "r_squared below 1");
    }

    // two exact regimes: -1 up to rank 2000, -2 afterwards, offset so the
    // knee sits on exactly one of the lines
    std::size_t n = 6000, knee = 2000;
    std::vector<double> values(n);
    double c = 1e6, c2 = 1.5 * c * std::pow(static_cast<double>(knee), 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double r = static_cast<double>(i + 1);
        values[i] = (i + 1 <= knee) ? c / r : c2 / (r * r);
    }
    auto grid = log_spaced_grid(10, 3000, 50);
    grid.push_back(2001); // ensure the true boundary is on the grid
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto fit = fit_segments(values, 2, grid);

    // oracle: brute force over every grid split with naive OLS
    auto naive_sse = [&](std::size_t lo, std::size_t hi) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = hi - lo + 1;
        for (std::size_t r = lo; r <= hi; ++r) {
            double x = std::log(static_cast<double>(r));
            double y = std::log(values[r - 1]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double slope = (sxy - sx * sy / m) / (sxx - sx * sx / m);
        double intercept = (sy - slope * sx) / m;
        double sse = 0;
        for (std::size_t r = lo; r <= hi; ++r) {
            double x = std::log(static_cast<double>(r));
            double e = std::log(values[r - 1]) - (intercept + slope * x);
            sse += e * e;
        }
        return sse;
    };
    double best = 1e300;
    std::uint32_t best_b = 0;
    for (std::uint32_t b : grid) {
        if (b < 4 || n - b + 1 < 3) continue;
        double sse = naive_sse(1, b - 1) + naive_sse(b, n);
        if (sse < best) {
            best = sse;
            best_b = b;
        }
    }
    require(fit.segments[1].rank_lo == best_b, "breakpoint disagrees with brute force");
    require(best_b == 2001, "planted breakpoint not recovered");
    require(std::abs(fit.segments[0].exponent - (-1.0)) <= 1e-6, "upper exponent off");
    require(std::abs(fit.segments[1].exponent - (-2.0)) <= 1e-6, "lower exponent off");
    return "alpha {-0.5,-1,-2} exact; breakpoint 2001 = brute force; exponents within 1e-6";
}

// ---------------------------------------------------------------------------
// criterion 3: natural-language band on the bundled English corpus

std::string criterion_3(const context& ctx) {
    const auto& table = english_table(ctx);
    require(table.total_tokens() >= 1000000,
            "English fixture has only " + std::to_string(table.total_tokens()) + " tokens");
    auto ranked = rank_table(table);
    auto series = count_series(ranked);

    // plain fit over the top 3000 ranks sits in the band too
    auto head_fit = loglog_fit(series, 1, 3000);
    require(head_fit.exponent >= -1.4 && head_fit.exponent <= -0.7,
            "exponent over [1,3000] " + format_num(head_fit.exponent) + " outside [-1.4, -0.7]");

    auto grid = default_breakpoint_grid(ranked);
    auto fit = fit_segments(series, 2, grid);
    double exponent = fit.segments[0].exponent;
    std::uint32_t breakpoint = fit.segments[1].rank_lo;
    require(exponent >= -1.4 && exponent <= -0.7,
            "upper exponent " + format_num(exponent) + " outside [-1.4, -0.7]");
    require(breakpoint >= 1000 && breakpoint <= 8000,
            "breakpoint " + std::to_string(breakpoint) + " outside [1000, 8000]");
    return "tokens=" + std::to_string(table.total_tokens()) +
           " exponent[1,3000]=" + format_num(head_fit.exponent) +
           " upper exponent=" + format_num(exponent) +
           " breakpoint=" + std::to_string(breakpoint);
}

// ---------------------------------------------------------------------------
// criterion 4: monkey contrast and geometric word lengths

std::string criterion_4(const context& ctx) {
    const auto& english = english_table(ctx);

    monkey_config config{26, 0.18, english.total_tokens(), 7};
    frequency_table monkey;
    generate_monkey_text(config, [&](std::string&& w) { monkey.add(w); });

    auto ranked_e = rank_table(english);
    auto ranked_m = rank_table(monkey);
    double bend_e = bending_score(count_series(ranked_e), default_breakpoint_grid(ranked_e));
    double bend_m = bending_score(count_series(ranked_m), default_breakpoint_grid(ranked_m));
    require(bend_e > bend_m, "bending: english " + format_num(bend_e) + " <= monkey " +
                                 format_num(bend_m));

    auto histogram = word_length_distribution(monkey, length_weighting::by_token);
    double n = static_cast<double>(monkey.total_tokens());
    double p = config.space_probability;
    std::size_t occupied = 0;
    for (std::size_t len = 1; len <= 10; ++len) {
        auto it = histogram.find(len);
        double got = it == histogram.end() ? 0.0 : it->second;
        if (got > 0.0) ++occupied;
        double expected = p * std::pow(1.0 - p, static_cast<double>(len - 1));
        double se = std::sqrt(expected * (1.0 - expected) / n);
        require(std::abs(got - expected) <= 3.0 * se,
                "length " + std::to_string(len) + " off by more than 3 standard errors");
    }
    require(occupied == 10, "not every length up to 10 is occupied");
    return "bending english=" + format_num(bend_e) + " > monkey=" + format_num(bend_m) +
           "; lengths geometric within 3 SE";
}

// ---------------------------------------------------------------------------
// criterion 5: drift on a synthetic 64-year corpus with 1% kernel turnover

std::string criterion_5(const context&) {
    // 12000-word zipfian vocabulary; every year 1% of the top-3000 kernel is
    // replaced by fresh words and counts get a mild lognormal jitter so the
    // rank order also drifts.
    std::mt19937_64 rng(5150);
    std::size_t vocab = 12000, kernel = 3000;
    std::vector<std::string> words(vocab);
    std::vector<double> mass(vocab);
    for (std::size_t i = 0; i < vocab; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "w%06zu", i);
        words[i] = buf;
        mass[i] = 1e7 / std::pow(static_cast<double>(i + 1), 1.05);
    }
    std::size_t next_id = vocab;

    year_binned_corpus corpus;
    for (int year = 1900; year <= 1972; ++year) {
        frequency_table bin;
        for (std::size_t i = 0; i < vocab; ++i) {
            auto count = static_cast<std::uint64_t>(mass[i]);
            if (count == 0) count = 1;
            bin.add(words[i], count);
        }
        corpus.bins[year] = std::move(bin);

        for (std::size_t r = 0; r < kernel / 100; ++r) {
            std::size_t slot = rng() % kernel;
            char buf[16];
            std::snprintf(buf, sizeof(buf), "n%06zu", next_id++);
            words[slot] = buf;
        }
        for (auto& m : mass) {
            double u = (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 0.5;
            m *= std::exp(0.08 * u);
        }
    }

    std::vector<int> intervals{1, 2, 4, 8, 16, 32, 64};
    auto series = drift_series(corpus, kernel, intervals, 4);

    std::map<int, std::pair<double, int>> by_interval;
    for (const auto& point : series) {
        by_interval[point.interval].first += point.cosine;
        by_interval[point.interval].second += 1;
    }
    require(by_interval.size() == intervals.size(), "missing interval");

    std::vector<double> means;
    for (int delta : intervals) {
        auto [sum, count] = by_interval.at(delta);
        means.push_back(sum / count);
    }
    bool non_increasing = true;
    for (std::size_t i = 1; i < means.size(); ++i) {
        if (means[i] > means[i - 1] + 1e-12) non_increasing = false;
    }
    require(non_increasing, "mean cosine not non-increasing across intervals");

    // Spearman rank correlation between interval order and mean similarity;
    // with strictly decreasing means this is exactly -1, the criterion needs
    // at most -0.8. mean_rank[i] is the ascending rank of means[i].
    std::vector<double> mean_rank(means.size());
    for (std::size_t i = 0; i < means.size(); ++i) {
        double rank = 1.0;
        for (std::size_t j = 0; j < means.size(); ++j) {
            if (means[j] < means[i]) rank += 1.0;
        }
        mean_rank[i] = rank;
    }
    double sum_d2 = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        double d = static_cast<double>(i + 1) - mean_rank[i];
        sum_d2 += d * d;
    }
    double k = static_cast<double>(means.size());
    double rank_corr = 1.0 - 6.0 * sum_d2 / (k * (k * k - 1.0));
    require(rank_corr <= -0.8, "rank correlation " + format_num(rank_corr) + " above -0.8");

    double correlation = index_correlation(series);
    require(correlation >= 0.9,
            "index correlation " + format_num(correlation) + " below 0.9");
    return "mean cosine non-increasing (rank corr " + format_num(rank_corr) +
           "), index correlation " + format_num(correlation);
}

// ---------------------------------------------------------------------------
// criterion 6: ANOSIM exactness

std::string criterion_6(const context&) {
    // 4 works, 2 groups, perfect separation: R = 1, exact p = 1/3
    dissimilarity_matrix m;
    m.n = 4;
    m.values = {0.0, 0.10, 0.80, 0.90, 0.10, 0.0, 0.70, 0.60,
                0.80, 0.70, 0.0, 0.20, 0.90, 0.60, 0.20, 0.0};
    m.work_ids = {"w0", "w1", "w2", "w3"};
    m.author_ids = {"A", "A", "B", "B"};
    auto result = anosim(m, 999, 7);
    require(result.exact, "4-work instance should enumerate exactly");
    require(result.r == 1.0, "perfect separation R != 1");
    require(std::abs(result.p_value - 1.0 / 3.0) <= 1e-15, "exact p != 1/3");

    // random perfect-separation matrices keep R = 1 exactly
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        std::size_t per = 2 + rng() % 4;
        std::size_t groups = 2 + rng() % 3;
        std::size_t n = per * groups;
        dissimilarity_matrix pm;
        pm.n = n;
        pm.values.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            pm.work_ids.push_back("w" + std::to_string(i));
            pm.author_ids.push_back("g" + std::to_string(i / per));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                bool within = pm.author_ids[i] == pm.author_ids[j];
                double v = within ? 0.1 + 1e-4 * static_cast<double>(rng() % 1000)
                                  : 0.7 + 1e-4 * static_cast<double>(rng() % 1000);
                pm.values[i * n + j] = pm.values[j * n + i] = v;
            }
        }
        require(anosim(pm, 99, iter).r == 1.0, "random perfect separation R != 1");
    }

    // permutation null centered on zero: mean of 1000 permuted R within 0.05
    std::size_t n = 12;
    dissimilarity_matrix nm;
    nm.n = n;
    nm.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        nm.work_ids.push_back("w" + std::to_string(i));
        nm.author_ids.push_back("g" + std::to_string(i % 3));
    }
    std::mt19937_64 nrng(123);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.1 + 1e-3 * static_cast<double>(nrng() % 1000);
            nm.values[i * n + j] = nm.values[j * n + i] = v;
        }
    }
    auto null_result = anosim(nm, 1000, 2024);
    require(std::abs(null_result.null_mean) <= 0.05,
            "null mean " + format_num(null_result.null_mean) + " outside +-0.05");
    return "exact 4x2 enumeration, R=1 on separation, null mean " +
           format_num(null_result.null_mean);
}

// ---------------------------------------------------------------------------
// criterion 7: desk-scale style separation on the bundled author fixture

std::string criterion_7(const context& ctx) {
    auto manifest_path = ctx.fixtures / "style" / "works.tsv";
    std::ifstream manifest(manifest_path);
    require(manifest.is_open(), "missing style manifest " + manifest_path.string());
    auto sources = read_work_manifest(manifest, manifest_path.parent_path().string());

    std::map<std::string, int> works_per_author;
    for (const auto& s : sources) ++works_per_author[s.author_id];
    require(works_per_author.size() >= 3, "fixture needs at least 3 authors");
    for (const auto& [author, count] : works_per_author) {
        require(count >= 3, "author " + author + " has fewer than 3 works");
    }

    style_options options;
    options.k = 3000;
    options.n_permutations = 999;
    options.seed = 1234;
    options.threads = 4;
    auto outcome = style_report(sources, options);
    require(outcome.anosim.r >= 0.5,
            "R = " + format_num(outcome.anosim.r) + " below 0.5");
    require(outcome.anosim.p_value <= 0.05,
            "p = " + format_num(outcome.anosim.p_value) + " above 0.05");
    return std::to_string(works_per_author.size()) + " authors, " +
           std::to_string(outcome.matrix.n) + " works: R=" + format_num(outcome.anosim.r) +
           " p=" + format_num(outcome.anosim.p_value);
}

// ---------------------------------------------------------------------------
// criterion 8: byte-identical manifests across reruns and thread counts

int run_cli(const context& ctx, const std::string& args) {
    std::string command = ctx.cli + " " + args + " >/dev/null 2>&1";
    return std::system(command.c_str());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.is_open(), "missing " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string criterion_8(const context& ctx) {
    fs::remove_all(ctx.scratch);
    fs::create_directories(ctx.scratch);

    auto english = (ctx.fixtures / "english" / "english_corpus.txt.gz").string();
    auto style_manifest = (ctx.fixtures / "style" / "works.tsv").string();
    auto google = (ctx.fixtures / "google_sample.tsv").string();
    auto out = [&](const std::string& name) { return (ctx.scratch / name).string(); };

    struct job {
        std::string name;
        std::string args;
    };
    std::vector<job> jobs = {
        {"freq", "freq --input " + english + " --out {OUT}"},
        {"zipf", "zipf --input " + english + " --segments 2 --out {OUT}"},
        {"drift", "drift --format google1gram --input " + google +
                      " --kernel-size 200 --intervals 1,2,4,8 --year-range 1900,1940 --out {OUT}"},
        {"style", "style --manifest " + style_manifest +
                      " --permutations 199 --seed 5 --out {OUT}"},
        {"monkey", "monkey --tokens 50000 --seed 6 --out {OUT}"},
    };

    for (const auto& j : jobs) {
        // identical config means identical --out as well: rerun into the same
        // directory (commits replace it atomically) and diff the manifests
        std::string dir = out(j.name);
        std::vector<std::string> manifests;
        for (const char* threads : {"1", "1", "8"}) {
            std::string args = j.args;
            args.replace(args.find("{OUT}"), 5, dir);
            if (j.name != "monkey") {
                // monkey takes no --threads; rerun determinism only
                args += std::string(" --threads ") + threads;
            }
            int rc = run_cli(ctx, args);
            require(rc == 0, j.name + " exited with " + std::to_string(rc));
            manifests.push_back(slurp(fs::path(dir) / "manifest.json"));
        }
        require(manifests[0] == manifests[1], j.name + ": rerun manifest differs");
        require(manifests[0] == manifests[2], j.name + ": thread count changed the manifest");
    }
    return "freq/zipf/drift/style/monkey manifests identical across reruns and threads 1 vs 8";
}

} // namespace

int main(int argc, char** argv) {
    context ctx;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "missing value for " << arg << "\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--cli") ctx.cli = next();
        else if (arg == "--fixtures") ctx.fixtures = next();
        else if (arg == "--scratch") ctx.scratch = next();
        else if (arg == "--only") ctx.only = std::stoi(next());
        else {
            std::cerr << "unknown argument " << arg << "\n";
            return 2;
        }
    }
    if (ctx.cli.empty() || ctx.fixtures.empty() || ctx.scratch.empty()) {
        std::cerr << "usage: kernlex_acceptance --cli PATH --fixtures DIR --scratch DIR [--only N]\n";
        return 2;
    }

    struct criterion {
        int number;
        const char* title;
        double budget_seconds;
        std::function<std::string(const context&)> run;
    };
    std::vector<criterion> criteria = {
        {1, "metric oracle equivalence", 10.0, criterion_1},
        {2, "zipf exactness", 5.0, criterion_2},
        {3, "natural-language zipf band", 60.0, criterion_3},
        {4, "monkey contrast", 60.0, criterion_4},
        {5, "drift behavior", 120.0, criterion_5},
        {6, "anosim exactness", 120.0, criterion_6},
        {7, "desk-scale style separation", 120.0, criterion_7},
        {8, "determinism", 300.0, criterion_8},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (ctx.only != 0 && ctx.only != c.number) continue;
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool passed = true;
        try {
            detail = c.run(ctx);
        } catch (const check_failure& f) {
            passed = false;
            detail = f.message;
        } catch (const std::exception& e) {
            passed = false;
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (passed && elapsed > c.budget_seconds) {
            passed = false;
            detail = "runtime " + format_num(elapsed) + "s exceeds " +
                     format_num(c.budget_seconds) + "s budget";
        }
        if (!passed) ++failures;
        std::cout << (passed ? "PASS" : "FAIL") << " criterion " << c.number << " ("
                  << c.title << ", " << format_num(elapsed) << "s): " << detail << "\n";
    }
    return failures == 0 ? 0 : 1;
}
