#include "kernlex/zipf.hpp"

#include "kernlex/error.hpp"
#include "kernlex/unicode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kernlex {

namespace {

void check_range(std::size_t n, std::uint32_t rank_lo, std::uint32_t rank_hi) {
    if (rank_lo < 1 || rank_hi > n || rank_lo > rank_hi) {
        throw analysis_error("fit range [" + std::to_string(rank_lo) + ", " +
                             std::to_string(rank_hi) + "] outside the ranked data");
    }
}

void check_positive(std::span<const double> frequencies, std::uint32_t rank_lo,
                    std::uint32_t rank_hi) {
    for (std::uint32_t r = rank_lo; r <= rank_hi; ++r) {
        if (!(frequencies[r - 1] > 0.0)) {
            throw analysis_error("frequency at rank " + std::to_string(r) + " is not positive");
        }
    }
}

// Two-pass OLS on (ln rank, ln frequency), numerically careful so that exact
// power-law inputs recover their exponent to ~1e-12.
power_law_fit ols_loglog(std::span<const double> frequencies, std::uint32_t rank_lo,
                         std::uint32_t rank_hi) {
    std::size_t n = rank_hi - rank_lo + 1;
    double mean_x = 0.0, mean_y = 0.0;
    for (std::uint32_t r = rank_lo; r <= rank_hi; ++r) {
        mean_x += std::log(static_cast<double>(r));
        mean_y += std::log(frequencies[r - 1]);
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::uint32_t r = rank_lo; r <= rank_hi; ++r) {
        double dx = std::log(static_cast<double>(r)) - mean_x;
        double dy = std::log(frequencies[r - 1]) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    power_law_fit fit;
    fit.rank_lo = rank_lo;
    fit.rank_hi = rank_hi;
    fit.exponent = sxy / sxx; // ranks are distinct, sxx > 0
    fit.log_intercept = mean_y - fit.exponent * mean_x;
    fit.sse = std::max(0.0, syy - fit.exponent * sxy);
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - fit.sse / syy) : 1.0;
    return fit;
}

// Prefix moments of (x, y) = (ln rank, ln frequency) for O(1) segment SSE
// during the breakpoint search.
struct loglog_moments {
    std::vector<double> sx, sy, sxx, sxy, syy;

    explicit loglog_moments(std::span<const double> frequencies) {
        std::size_t n = frequencies.size();
        sx.assign(n + 1, 0.0);
        sy.assign(n + 1, 0.0);
        sxx.assign(n + 1, 0.0);
        sxy.assign(n + 1, 0.0);
        syy.assign(n + 1, 0.0);
        for (std::size_t i = 1; i <= n; ++i) {
            double x = std::log(static_cast<double>(i));
            double y = std::log(frequencies[i - 1]);
            sx[i] = sx[i - 1] + x;
            sy[i] = sy[i - 1] + y;
            sxx[i] = sxx[i - 1] + x * x;
            sxy[i] = sxy[i - 1] + x * y;
            syy[i] = syy[i - 1] + y * y;
        }
    }

    double segment_sse(std::uint32_t lo, std::uint32_t hi) const {
        double n = static_cast<double>(hi - lo + 1);
        double dx = sx[hi] - sx[lo - 1];
        double dy = sy[hi] - sy[lo - 1];
        double dxx = sxx[hi] - sxx[lo - 1];
        double dxy = sxy[hi] - sxy[lo - 1];
        double dyy = syy[hi] - syy[lo - 1];
        double cxx = dxx - dx * dx / n;
        double cxy = dxy - dx * dy / n;
        double cyy = dyy - dy * dy / n;
        if (cxx <= 0.0) return cyy > 0.0 ? cyy : 0.0;
        return std::max(0.0, cyy - cxy * cxy / cxx);
    }
};

constexpr std::uint32_t k_min_segment_ranks = 3;

} // namespace

power_law_fit loglog_fit(std::span<const double> frequencies, std::uint32_t rank_lo,
                         std::uint32_t rank_hi) {
    check_range(frequencies.size(), rank_lo, rank_hi);
    if (rank_hi - rank_lo + 1 < k_min_segment_ranks) {
        throw analysis_error("fit range must contain at least 3 ranks");
    }
    check_positive(frequencies, rank_lo, rank_hi);
    double first = frequencies[rank_lo - 1];
    bool all_equal = true;
    for (std::uint32_t r = rank_lo + 1; r <= rank_hi && all_equal; ++r) {
        all_equal = frequencies[r - 1] == first;
    }
    if (all_equal) {
        throw analysis_error("degenerate fit range: every frequency is equal");
    }
    return ols_loglog(frequencies, rank_lo, rank_hi);
}

power_law_fit loglog_fit(const ranked_distribution& ranked, std::uint32_t rank_lo,
                         std::uint32_t rank_hi) {
    return loglog_fit(count_series(ranked), rank_lo, rank_hi);
}

std::vector<std::uint32_t> log_spaced_grid(std::uint32_t lo, std::uint32_t hi, std::size_t points) {
    if (lo < 1 || lo > hi) throw config_error("bad grid bounds");
    if (points < 1) throw config_error("grid needs at least one point");
    std::vector<std::uint32_t> grid;
    double llo = std::log(static_cast<double>(lo));
    double lhi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < points; ++i) {
        double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        auto r = static_cast<std::uint32_t>(std::lround(std::exp(llo + t * (lhi - llo))));
        r = std::clamp<std::uint32_t>(r, lo, hi);
        if (grid.empty() || grid.back() != r) grid.push_back(r);
    }
    return grid;
}

std::uint32_t last_rank_with_count_at_least(const ranked_distribution& ranked,
                                            std::uint64_t min_count) {
    std::uint32_t last = 0;
    for (std::uint32_t r = 1; r <= ranked.size(); ++r) {
        if (ranked.at_rank(r).count < min_count) break;
        last = r;
    }
    return last;
}

std::vector<std::uint32_t> default_breakpoint_grid(const ranked_distribution& ranked) {
    auto n = static_cast<std::uint32_t>(ranked.size());
    std::uint32_t hi = std::max<std::uint32_t>(n / 2, 2);
    std::uint32_t resolved = last_rank_with_count_at_least(ranked, 10);
    if (resolved >= 20) hi = std::min(hi, resolved);
    std::uint32_t lo = std::min<std::uint32_t>(10, hi);
    return log_spaced_grid(lo, hi, 60);
}

segmented_fit_result fit_segments(std::span<const double> frequencies, int n_segments,
                                  std::span<const std::uint32_t> grid, std::uint32_t rank_lo,
                                  std::uint32_t rank_hi) {
    if (rank_hi == 0) rank_hi = static_cast<std::uint32_t>(frequencies.size());
    check_range(frequencies.size(), rank_lo, rank_hi);
    if (n_segments < 1 || n_segments > 3) {
        throw config_error("n_segments must be 1, 2 or 3");
    }
    check_positive(frequencies, rank_lo, rank_hi);

    // Candidate breakpoints: strictly inside the range, strictly increasing.
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t b : grid) {
        if (b > rank_lo && b <= rank_hi) {
            if (!candidates.empty() && b <= candidates.back()) {
                throw config_error("grid breakpoints must be strictly increasing");
            }
            candidates.push_back(b);
        }
    }

    loglog_moments moments(frequencies);
    auto feasible = [&](std::uint32_t lo, std::uint32_t hi) {
        return hi >= lo && hi - lo + 1 >= k_min_segment_ranks;
    };

    std::vector<std::uint32_t> best_breaks;
    double best_sse = std::numeric_limits<double>::infinity();
    bool found = false;

    if (n_segments == 1) {
        if (!feasible(rank_lo, rank_hi)) throw config_error("range too small for a segment");
        best_sse = moments.segment_sse(rank_lo, rank_hi);
        found = true;
    } else if (n_segments == 2) {
        for (std::uint32_t b : candidates) {
            if (!feasible(rank_lo, b - 1) || !feasible(b, rank_hi)) continue;
            double sse = moments.segment_sse(rank_lo, b - 1) + moments.segment_sse(b, rank_hi);
            if (sse < best_sse) {
                best_sse = sse;
                best_breaks = {b};
                found = true;
            }
        }
    } else {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::uint32_t b1 = candidates[i];
            if (!feasible(rank_lo, b1 - 1)) continue;
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                std::uint32_t b2 = candidates[j];
                if (!feasible(b1, b2 - 1) || !feasible(b2, rank_hi)) continue;
                double sse = moments.segment_sse(rank_lo, b1 - 1) +
                             moments.segment_sse(b1, b2 - 1) + moments.segment_sse(b2, rank_hi);
                if (sse < best_sse) {
                    best_sse = sse;
                    best_breaks = {b1, b2};
                    found = true;
                }
            }
        }
    }

    if (!found) {
        throw config_error("no grid split yields " + std::to_string(n_segments) +
                           " segments of at least 3 ranks");
    }

    // Recompute the winning segments with the careful two-pass fit for the
    // reported parameters.
    segmented_fit_result result;
    std::uint32_t lo = rank_lo;
    for (std::uint32_t b : best_breaks) {
        result.segments.push_back(ols_loglog(frequencies, lo, b - 1));
        lo = b;
    }
    result.segments.push_back(ols_loglog(frequencies, lo, rank_hi));
    result.total_sse = 0.0;
    for (const auto& seg : result.segments) result.total_sse += seg.sse;
    return result;
}

segmented_fit_result fit_segments(const ranked_distribution& ranked, int n_segments,
                                  std::span<const std::uint32_t> grid, std::uint32_t rank_lo,
                                  std::uint32_t rank_hi) {
    return fit_segments(count_series(ranked), n_segments, grid, rank_lo, rank_hi);
}

double bending_score(std::span<const double> frequencies, std::span<const std::uint32_t> grid,
                     std::uint32_t rank_lo, std::uint32_t rank_hi) {
    auto one = fit_segments(frequencies, 1, grid, rank_lo, rank_hi);
    auto two = fit_segments(frequencies, 2, grid, rank_lo, rank_hi);
    if (one.total_sse <= 0.0) return 0.0;
    double score = 1.0 - two.total_sse / one.total_sse;
    return std::clamp(score, 0.0, 1.0);
}

double bending_score(const ranked_distribution& ranked, std::span<const std::uint32_t> grid,
                     std::uint32_t rank_lo, std::uint32_t rank_hi) {
    return bending_score(count_series(ranked), grid, rank_lo, rank_hi);
}

std::vector<double> count_series(const ranked_distribution& ranked) {
    std::vector<double> series;
    series.reserve(ranked.size());
    for (const auto& entry : ranked.entries()) {
        series.push_back(static_cast<double>(entry.count));
    }
    return series;
}

std::map<std::size_t, double> word_length_distribution(const frequency_table& table,
                                                       length_weighting weighting) {
    if (table.empty()) throw analysis_error("cannot build a length histogram from an empty table");
    std::map<std::size_t, std::uint64_t> raw;
    std::uint64_t denom = 0;
    for (const auto& [word, count] : table.counts()) {
        std::uint64_t w = weighting == length_weighting::by_token ? count : 1;
        raw[unicode::codepoint_count(word)] += w;
        denom += w;
    }
    std::map<std::size_t, double> histogram;
    for (const auto& [length, mass] : raw) {
        histogram[length] = static_cast<double>(mass) / static_cast<double>(denom);
    }
    return histogram;
}

} // namespace kernlex
