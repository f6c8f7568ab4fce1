#include "kernlex/stylometry.hpp"

#include "kernlex/error.hpp"
#include "kernlex/parallel.hpp"
#include "kernlex/ranking.hpp"
#include "kernlex/readers.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <istream>
#include <map>
#include <numeric>
#include <random>

namespace kernlex {

namespace {

// splitmix64; used to derive independent per-permutation seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Portable Fisher-Yates; std::shuffle is implementation-defined.
template <typename T>
void shuffle_labels(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

double pearson_distance(const std::vector<double>& a, const std::vector<double>& b, double var_a,
                        double var_b, double mean_a, double mean_b) {
    double cov = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - mean_a) * (b[i] - mean_b);
    }
    return 1.0 - cov / std::sqrt(var_a * var_b);
}

} // namespace

standard_profile make_standard_profile(const std::vector<frequency_table>& works, std::size_t k) {
    if (works.empty()) throw config_error("standard profile needs at least one work");
    if (k == 0) throw config_error("kernel size must be positive");
    frequency_table pooled;
    for (const auto& work : works) pooled.merge(work);
    if (pooled.empty()) throw analysis_error("all works are empty");
    auto kernel = take_kernel(rank_table(pooled), k);
    standard_profile profile;
    profile.words.reserve(kernel.size());
    profile.f.reserve(kernel.size());
    for (const auto& member : kernel.members()) {
        profile.words.push_back(member.word);
        profile.f.push_back(member.relative_frequency);
    }
    return profile;
}

deviation_vector make_deviation_vector(const frequency_table& work,
                                       const standard_profile& profile) {
    if (work.empty()) throw config_error("cannot build a deviation vector from an empty work");
    deviation_vector vec;
    vec.d.resize(profile.words.size());
    double total = static_cast<double>(work.total_tokens());
    for (std::size_t i = 0; i < profile.words.size(); ++i) {
        double q = static_cast<double>(work.count_of(profile.words[i])) / total;
        vec.d[i] = q - profile.f[i];
    }
    return vec;
}

dissimilarity_metric metric_from_string(const std::string& name) {
    if (name == "one_minus_pearson") return dissimilarity_metric::one_minus_pearson;
    if (name == "euclidean") return dissimilarity_metric::euclidean;
    throw config_error("unknown dissimilarity metric: " + name);
}

const char* to_string(dissimilarity_metric metric) {
    return metric == dissimilarity_metric::one_minus_pearson ? "one_minus_pearson" : "euclidean";
}

dissimilarity_matrix make_dissimilarity_matrix(const std::vector<deviation_vector>& vectors,
                                               dissimilarity_metric metric) {
    std::size_t n = vectors.size();
    if (n < 2) throw config_error("dissimilarity matrix needs at least 2 vectors");
    for (std::size_t i = 1; i < n; ++i) {
        if (vectors[i].d.size() != vectors[0].d.size()) {
            throw config_error("deviation vectors disagree on dimension");
        }
    }

    dissimilarity_matrix matrix;
    matrix.n = n;
    matrix.values.assign(n * n, 0.0);
    for (const auto& v : vectors) {
        matrix.work_ids.push_back(v.work_id);
        matrix.author_ids.push_back(v.author_id);
    }

    std::vector<double> means(n, 0.0), vars(n, 0.0);
    if (metric == dissimilarity_metric::one_minus_pearson) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& d = vectors[i].d;
            means[i] = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
            for (double x : d) vars[i] += (x - means[i]) * (x - means[i]);
            if (vars[i] <= 0.0) {
                throw analysis_error("deviation vector of work '" + vectors[i].work_id +
                                     "' has zero variance; correlation dissimilarity undefined");
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist = 0.0;
            if (metric == dissimilarity_metric::one_minus_pearson) {
                dist = pearson_distance(vectors[i].d, vectors[j].d, vars[i], vars[j], means[i],
                                        means[j]);
            } else {
                for (std::size_t t = 0; t < vectors[i].d.size(); ++t) {
                    double diff = vectors[i].d[t] - vectors[j].d[t];
                    dist += diff * diff;
                }
                dist = std::sqrt(dist);
            }
            matrix.values[i * n + j] = dist;
            matrix.values[j * n + i] = dist;
        }
    }
    return matrix;
}

namespace {

// Average ranks of the n(n-1)/2 upper-triangle dissimilarities.
std::vector<double> pair_ranks(const dissimilarity_matrix& matrix) {
    std::size_t n = matrix.n;
    std::vector<double> values;
    values.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) values.push_back(matrix.at(i, j));
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
        i = j;
    }
    return ranks;
}

double anosim_r(const std::vector<double>& ranks, const std::vector<int>& groups, std::size_t n) {
    double sum_between = 0.0, sum_within = 0.0;
    std::size_t n_between = 0, n_within = 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            if (groups[i] == groups[j]) {
                sum_within += ranks[idx];
                ++n_within;
            } else {
                sum_between += ranks[idx];
                ++n_between;
            }
        }
    }
    double mean_between = sum_between / static_cast<double>(n_between);
    double mean_within = sum_within / static_cast<double>(n_within);
    double denom = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 4.0;
    return (mean_between - mean_within) / denom;
}

// n! / prod(group_size!) without overflow; huge counts saturate at max.
std::uint64_t distinct_labelings(const std::vector<std::size_t>& group_sizes) {
    long double count = 1.0L;
    std::size_t next = 1;
    for (std::size_t size : group_sizes) {
        for (std::size_t i = 1; i <= size; ++i, ++next) {
            count *= static_cast<long double>(next) / static_cast<long double>(i);
            if (count > 1e18L) return UINT64_MAX;
        }
    }
    return static_cast<std::uint64_t>(count + 0.5L);
}

} // namespace

anosim_result anosim(const dissimilarity_matrix& matrix, std::uint64_t n_permutations,
                     std::uint64_t seed, unsigned threads) {
    std::size_t n = matrix.n;
    if (n_permutations < 99) throw config_error("need at least 99 permutations");

    // author_id -> group index
    std::map<std::string, int> group_of;
    std::vector<int> groups(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = group_of.emplace(matrix.author_ids[i], static_cast<int>(group_of.size()));
        groups[i] = it->second;
    }
    std::vector<std::size_t> group_sizes(group_of.size(), 0);
    for (int g : groups) ++group_sizes[static_cast<std::size_t>(g)];
    if (group_sizes.size() < 2) throw analysis_error("ANOSIM needs at least 2 groups");
    for (std::size_t g = 0; g < group_sizes.size(); ++g) {
        if (group_sizes[g] < 2) {
            throw analysis_error("every group needs at least 2 members");
        }
    }

    auto ranks = pair_ranks(matrix);
    double observed = anosim_r(ranks, groups, n);

    anosim_result result;
    result.r = observed;
    result.seed = seed;

    std::vector<double> null_r;
    std::uint64_t total = distinct_labelings(group_sizes);
    if (total <= n_permutations) {
        // Exhaustive: walk every distinct label vector, skipping the observed
        // labeling itself once, so (hits+1)/(N+1) is the exact enumeration
        // p-value.
        result.exact = true;
        std::vector<int> labels = groups;
        std::sort(labels.begin(), labels.end());
        bool skipped_identity = false;
        do {
            if (!skipped_identity && labels == groups) {
                skipped_identity = true;
                continue;
            }
            null_r.push_back(anosim_r(ranks, labels, n));
        } while (std::next_permutation(labels.begin(), labels.end()));
    } else {
        result.exact = false;
        null_r.assign(n_permutations, 0.0);
        parallel_for(n_permutations, threads, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(seed, i));
            std::vector<int> labels = groups;
            shuffle_labels(labels, rng);
            null_r[i] = anosim_r(ranks, labels, n);
        });
    }

    result.n_permutations = null_r.size();
    std::uint64_t hits = 0;
    double sum = 0.0, max_r = -2.0;
    for (double r : null_r) {
        if (r >= observed) ++hits;
        sum += r;
        max_r = std::max(max_r, r);
    }
    double mean = sum / static_cast<double>(null_r.size());
    double var = 0.0;
    for (double r : null_r) var += (r - mean) * (r - mean);
    result.p_value = static_cast<double>(hits + 1) / static_cast<double>(null_r.size() + 1);
    result.null_mean = mean;
    result.null_sd = std::sqrt(var / static_cast<double>(null_r.size()));
    result.null_max = max_r;
    return result;
}

style_outcome style_report(std::vector<counted_work> works, const style_options& options) {
    style_outcome outcome;

    // Tiny works would have deviation vectors that are mostly -f; drop them.
    std::vector<counted_work> kept;
    for (auto& work : works) {
        if (work.table.total_tokens() < options.min_work_tokens) {
            outcome.excluded_works.push_back(work.work_id);
        } else {
            kept.push_back(std::move(work));
        }
    }

    std::map<std::string, std::size_t> works_per_author;
    for (const auto& work : kept) ++works_per_author[work.author_id];
    if (works_per_author.size() < 2) {
        throw analysis_error("need works from at least 2 authors after exclusions");
    }
    for (const auto& [author, count] : works_per_author) {
        if (count < 3) {
            throw analysis_error("author '" + author + "' has only " + std::to_string(count) +
                                 " usable work(s); need at least 3");
        }
    }

    std::vector<frequency_table> tables;
    tables.reserve(kept.size());
    for (const auto& work : kept) tables.push_back(work.table);
    outcome.profile = make_standard_profile(tables, options.k);

    std::vector<deviation_vector> vectors(kept.size());
    parallel_for(kept.size(), options.threads, [&](std::size_t i) {
        vectors[i] = make_deviation_vector(kept[i].table, outcome.profile);
        vectors[i].work_id = kept[i].work_id;
        vectors[i].author_id = kept[i].author_id;
    });

    outcome.matrix = make_dissimilarity_matrix(vectors, options.metric);
    outcome.anosim = anosim(outcome.matrix, options.n_permutations, options.seed, options.threads);
    return outcome;
}

style_outcome style_report(const std::vector<work_source>& sources, const style_options& options) {
    std::vector<counted_work> works(sources.size());
    parallel_for(sources.size(), options.threads, [&](std::size_t i) {
        frequency_table table;
        auto in = open_input(sources[i].path);
        try {
            read_plain_text(*in, options.policy, [&](std::string&& w) { table.add(w); });
        } catch (const input_error& e) {
            throw input_error("work '" + sources[i].work_id + "': " + e.what());
        }
        works[i] = counted_work{sources[i].author_id, sources[i].work_id, std::move(table)};
    });
    return style_report(std::move(works), options);
}

std::vector<work_source> read_work_manifest(std::istream& in, const std::string& base_dir) {
    std::vector<work_source> sources;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos || t2 + 1 >= line.size()) {
            throw input_error("manifest line " + std::to_string(line_no) +
                              " is not author<TAB>work<TAB>path");
        }
        work_source source;
        source.author_id = line.substr(0, t1);
        source.work_id = line.substr(t1 + 1, t2 - t1 - 1);
        source.path = line.substr(t2 + 1);
        if (!base_dir.empty() && !std::filesystem::path(source.path).is_absolute()) {
            source.path = (std::filesystem::path(base_dir) / source.path).string();
        }
        sources.push_back(std::move(source));
    }
    if (sources.empty()) throw input_error("work manifest is empty");
    return sources;
}

} // namespace kernlex
