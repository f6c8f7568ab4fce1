#pragma once

#include "kernlex/frequency_table.hpp"
#include "kernlex/ranking.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kernlex {

struct year_binned_corpus {
    std::map<int, frequency_table> bins; // year -> table
    std::string language_tag;
};

// |A ∩ B| / sqrt(|A|·|B|) on word identity; frequencies are ignored.
// Throws config_error when either lexicon is empty.
double cosine_set_similarity(const kernel_lexicon& a, const kernel_lexicon& b);

struct spearman_result {
    double rho = 0.0;
    std::size_t shared_words = 0;
};

// Spearman correlation of the two frequency rank orders over the shared
// word set: each side's shared members are re-ranked 1..m by frequency
// (average ranks on ties), then rho = 1 - 6*sum(d^2)/(m(m^2-1)), falling
// back to the Pearson correlation of the rank vectors when ties exist.
// Throws analysis_error when fewer than 2 words are shared.
spearman_result spearman_rho(const kernel_lexicon& a, const kernel_lexicon& b);

struct drift_point {
    int year_a = 0;
    int year_b = 0;
    int interval = 0; // year_b - year_a
    double cosine = 0.0;
    double spearman = 0.0; // NaN when undefined (fewer than 2 shared words)
    std::size_t shared_words = 0;
};

// Every (year, year + interval) pair available in the corpus, compared on
// top-k kernels, sorted by (interval, year_a). Throws analysis_error when no
// requested pair exists at all.
std::vector<drift_point> drift_series(const year_binned_corpus& corpus, std::size_t k,
                                      const std::vector<int>& intervals, unsigned threads = 1);

// Pearson correlation between the cosine and spearman columns of a drift
// series, pooled across intervals. Points with a non-finite index are
// ignored; needs >= 3 usable points and nonzero variance in both indices.
double index_correlation(const std::vector<drift_point>& series);

// Centered moving average with an odd span; the window shrinks symmetrically
// at the boundaries (spans 1, 3, ... toward the edges), so the output length
// equals the input length.
std::vector<double> moving_average(const std::vector<double>& series, std::size_t span = 5);

struct variety_point {
    int year = 0;
    double cosine = 0.0;
    double spearman = 0.0; // NaN when undefined
    std::size_t shared_words = 0;
};

// Year-by-year comparison of two varieties on their top-k kernels over the
// shared years, sorted by year. Throws analysis_error when the corpora share
// no years.
std::vector<variety_point> cross_variety_series(const year_binned_corpus& a,
                                                const year_binned_corpus& b, std::size_t k,
                                                unsigned threads = 1);

} // namespace kernlex
