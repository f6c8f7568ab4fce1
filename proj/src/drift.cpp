#include "kernlex/drift.hpp"

#include "kernlex/error.hpp"
#include "kernlex/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace kernlex {

namespace {

std::unordered_set<std::string_view> member_set(const kernel_lexicon& lexicon) {
    std::unordered_set<std::string_view> words;
    words.reserve(lexicon.size());
    for (const auto& m : lexicon.members()) words.insert(m.word);
    return words;
}

// Frequency-descending ranks 1..m with average ranks on count ties.
std::unordered_map<std::string_view, double> shared_ranks(
    const kernel_lexicon& lexicon, const std::unordered_set<std::string_view>& shared,
    bool& has_ties) {
    std::vector<std::pair<std::uint64_t, std::string_view>> items;
    items.reserve(shared.size());
    for (const auto& m : lexicon.members()) {
        if (shared.count(m.word)) items.emplace_back(m.count, m.word);
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::unordered_map<std::string_view, double> ranks;
    ranks.reserve(items.size());
    std::size_t i = 0;
    while (i < items.size()) {
        std::size_t j = i;
        while (j < items.size() && items[j].first == items[i].first) ++j;
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        if (j - i > 1) has_ties = true;
        for (std::size_t t = i; t < j; ++t) ranks[items[t].second] = avg;
        i = j;
    }
    return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw analysis_error("correlation undefined: an index has zero variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

struct kernel_comparison {
    double cosine = 0.0;
    double spearman = std::numeric_limits<double>::quiet_NaN();
    std::size_t shared_words = 0;
};

// Both indices at once; spearman stays NaN when undefined for the pair.
kernel_comparison compare_kernels(const kernel_lexicon& a, const kernel_lexicon& b) {
    kernel_comparison cmp;
    auto b_set = member_set(b);
    for (const auto& m : a.members()) {
        if (b_set.count(m.word)) ++cmp.shared_words;
    }
    cmp.cosine = static_cast<double>(cmp.shared_words) /
                 std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
    if (cmp.shared_words >= 2) {
        try {
            cmp.spearman = spearman_rho(a, b).rho;
        } catch (const analysis_error&) {
            // degenerate rank variance; leave NaN
        }
    }
    return cmp;
}

} // namespace

double cosine_set_similarity(const kernel_lexicon& a, const kernel_lexicon& b) {
    if (a.size() == 0 || b.size() == 0) {
        throw config_error("cosine set similarity needs non-empty lexicons");
    }
    const kernel_lexicon& small = a.size() <= b.size() ? a : b;
    const kernel_lexicon& large = a.size() <= b.size() ? b : a;
    auto large_set = member_set(large);
    std::size_t intersection = 0;
    for (const auto& m : small.members()) {
        if (large_set.count(m.word)) ++intersection;
    }
    return static_cast<double>(intersection) /
           std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

spearman_result spearman_rho(const kernel_lexicon& a, const kernel_lexicon& b) {
    auto b_set = member_set(b);
    std::unordered_set<std::string_view> shared;
    for (const auto& m : a.members()) {
        if (b_set.count(m.word)) shared.insert(m.word);
    }
    std::size_t m = shared.size();
    if (m < 2) {
        throw analysis_error("insufficient overlap: " + std::to_string(m) +
                             " shared word(s), need at least 2");
    }

    bool has_ties = false;
    auto ranks_a = shared_ranks(a, shared, has_ties);
    auto ranks_b = shared_ranks(b, shared, has_ties);

    // accumulate in a's rank order so the sum is reproducible everywhere
    spearman_result result;
    result.shared_words = m;
    if (!has_ties) {
        double sum_d2 = 0.0;
        for (const auto& member : a.members()) {
            if (!shared.count(member.word)) continue;
            double d = ranks_a.at(member.word) - ranks_b.at(member.word);
            sum_d2 += d * d;
        }
        double mm = static_cast<double>(m);
        result.rho = 1.0 - 6.0 * sum_d2 / (mm * (mm * mm - 1.0));
    } else {
        std::vector<double> ra, rb;
        ra.reserve(m);
        rb.reserve(m);
        for (const auto& member : a.members()) {
            if (!shared.count(member.word)) continue;
            ra.push_back(ranks_a.at(member.word));
            rb.push_back(ranks_b.at(member.word));
        }
        result.rho = pearson(ra, rb);
    }
    return result;
}

std::vector<drift_point> drift_series(const year_binned_corpus& corpus, std::size_t k,
                                      const std::vector<int>& intervals, unsigned threads) {
    std::set<int> wanted;
    for (int delta : intervals) {
        if (delta <= 0) throw config_error("intervals must be positive");
        wanted.insert(delta);
    }
    if (wanted.empty()) throw config_error("no intervals requested");

    std::vector<int> years;
    for (const auto& [year, table] : corpus.bins) {
        if (!table.empty()) years.push_back(year);
    }
    std::set<int> year_set(years.begin(), years.end());

    struct pair_task {
        int year_a, year_b, interval;
    };
    std::vector<pair_task> tasks;
    for (int delta : wanted) {
        for (int y : years) {
            if (year_set.count(y + delta)) tasks.push_back({y, y + delta, delta});
        }
    }
    if (tasks.empty()) throw analysis_error("no year pairs available at the requested intervals");

    std::unordered_map<int, kernel_lexicon> kernels;
    kernels.reserve(years.size());
    for (int y : years) {
        kernels.emplace(y, take_kernel(rank_table(corpus.bins.at(y)), k));
    }

    std::vector<drift_point> series(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const auto& task = tasks[i];
        auto cmp = compare_kernels(kernels.at(task.year_a), kernels.at(task.year_b));
        series[i] = drift_point{task.year_a, task.year_b,  task.interval,
                                cmp.cosine,  cmp.spearman, cmp.shared_words};
    });
    return series;
}

double index_correlation(const std::vector<drift_point>& series) {
    std::vector<double> cosines, spearmans;
    for (const auto& p : series) {
        if (std::isfinite(p.cosine) && std::isfinite(p.spearman)) {
            cosines.push_back(p.cosine);
            spearmans.push_back(p.spearman);
        }
    }
    if (cosines.size() < 3) {
        throw analysis_error("index correlation needs at least 3 drift points");
    }
    return pearson(cosines, spearmans);
}

std::vector<double> moving_average(const std::vector<double>& series, std::size_t span) {
    if (span % 2 == 0) throw config_error("moving average span must be odd");
    if (series.empty()) throw config_error("moving average input is empty");
    std::size_t n = series.size();
    std::size_t half = span / 2;
    std::vector<double> smoothed(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t h = std::min({half, i, n - 1 - i});
        double sum = 0.0;
        for (std::size_t j = i - h; j <= i + h; ++j) sum += series[j];
        smoothed[i] = sum / static_cast<double>(2 * h + 1);
    }
    return smoothed;
}

std::vector<variety_point> cross_variety_series(const year_binned_corpus& a,
                                                const year_binned_corpus& b, std::size_t k,
                                                unsigned threads) {
    std::vector<int> shared_years;
    for (const auto& [year, table] : a.bins) {
        if (table.empty()) continue;
        auto it = b.bins.find(year);
        if (it != b.bins.end() && !it->second.empty()) shared_years.push_back(year);
    }
    if (shared_years.empty()) throw analysis_error("the two corpora share no years");

    std::vector<variety_point> series(shared_years.size());
    parallel_for(shared_years.size(), threads, [&](std::size_t i) {
        int year = shared_years[i];
        auto ka = take_kernel(rank_table(a.bins.at(year)), k);
        auto kb = take_kernel(rank_table(b.bins.at(year)), k);
        auto cmp = compare_kernels(ka, kb);
        series[i] = variety_point{year, cmp.cosine, cmp.spearman, cmp.shared_words};
    });
    return series;
}

} // namespace kernlex
