#pragma once

#include "kernlex/frequency_table.hpp"
#include "kernlex/ranking.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace kernlex {

// Least-squares line through (ln rank, ln frequency); the slope is the Zipf
// exponent. r_squared is 1 - sse/total_variance over the fitted range.
struct power_law_fit {
    double exponent = 0.0;
    double log_intercept = 0.0;
    double sse = 0.0;
    double r_squared = 0.0;
    std::uint32_t rank_lo = 0;
    std::uint32_t rank_hi = 0;
};

// The fitting core works on a real-valued frequency series indexed by rank:
// frequencies[i] is the value at rank i+1 and must be positive. Requires at
// least 3 ranks with varying values; throws analysis_error on a degenerate
// range.
power_law_fit loglog_fit(std::span<const double> frequencies, std::uint32_t rank_lo,
                         std::uint32_t rank_hi);
power_law_fit loglog_fit(const ranked_distribution& ranked, std::uint32_t rank_lo,
                         std::uint32_t rank_hi);

struct segmented_fit_result {
    std::vector<power_law_fit> segments; // contiguous partition of the range
    double total_sse = 0.0;
};

// Exhaustive best split of [rank_lo, rank_hi] into n_segments pieces whose
// boundaries are drawn from `grid` (a breakpoint b starts a new segment at
// rank b). Minimizes the summed log-log SSE; ties go to the smallest
// breakpoints. Every segment must span at least 3 ranks; throws config_error
// when no grid combination is feasible. rank_hi = 0 means the whole series.
segmented_fit_result fit_segments(std::span<const double> frequencies, int n_segments,
                                  std::span<const std::uint32_t> grid, std::uint32_t rank_lo = 1,
                                  std::uint32_t rank_hi = 0);
segmented_fit_result fit_segments(const ranked_distribution& ranked, int n_segments,
                                  std::span<const std::uint32_t> grid, std::uint32_t rank_lo = 1,
                                  std::uint32_t rank_hi = 0);

// Log-spaced candidate breakpoints in [lo, hi], deduplicated after rounding.
std::vector<std::uint32_t> log_spaced_grid(std::uint32_t lo, std::uint32_t hi,
                                           std::size_t points = 60);

// Default grid for a distribution: 60 log-spaced ranks from 10 up to the
// resolved part of the curve, min(vocabulary/2, last rank with count >= 10).
// Deeper in the tail the log-counts collapse onto a few discrete levels and
// a breakpoint there would track sampling noise (the count-1 plateau), not a
// regime change.
std::vector<std::uint32_t> default_breakpoint_grid(const ranked_distribution& ranked);

// 1 - sse(two segments)/sse(one segment) over [rank_lo, rank_hi], clamped to
// [0,1]. Zero when a single power law already explains the curve; values
// near one signal the two-regime downward bend that natural languages show
// and random typing lacks.
double bending_score(std::span<const double> frequencies, std::span<const std::uint32_t> grid,
                     std::uint32_t rank_lo = 1, std::uint32_t rank_hi = 0);
double bending_score(const ranked_distribution& ranked, std::span<const std::uint32_t> grid,
                     std::uint32_t rank_lo = 1, std::uint32_t rank_hi = 0);

// Copies the count column into the double-valued series the fitters consume.
std::vector<double> count_series(const ranked_distribution& ranked);

// Largest rank whose count is still at least min_count; 0 when none is.
// Useful for truncating the count-1 tail plateau as a sensitivity check.
std::uint32_t last_rank_with_count_at_least(const ranked_distribution& ranked,
                                            std::uint64_t min_count);

enum class length_weighting {
    by_token, // each occurrence counts
    by_type,  // each distinct word counts once
};

// Distribution of word length in codepoints; masses sum to 1.
std::map<std::size_t, double> word_length_distribution(const frequency_table& table,
                                                       length_weighting weighting);

} // namespace kernlex
