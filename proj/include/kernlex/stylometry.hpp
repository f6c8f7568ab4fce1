#pragma once

#include "kernlex/frequency_table.hpp"
#include "kernlex/token_policy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kernlex {

// Pooled top-K words of a speech community with their pooled relative
// frequencies, the standard every work is compared against.
struct standard_profile {
    std::vector<std::string> words; // rank order
    std::vector<double> f;          // pooled relative frequency per word
};

standard_profile make_standard_profile(const std::vector<frequency_table>& works,
                                       std::size_t k = 3000);

// Per-work fingerprint: d_i = q_i - f_i where q_i is the work's relative
// frequency of profile word i (zero when absent).
struct deviation_vector {
    std::string work_id;
    std::string author_id;
    std::vector<double> d;
};

deviation_vector make_deviation_vector(const frequency_table& work,
                                       const standard_profile& profile);

enum class dissimilarity_metric {
    one_minus_pearson,
    euclidean,
};

dissimilarity_metric metric_from_string(const std::string& name);
const char* to_string(dissimilarity_metric metric);

// Symmetric pairwise dissimilarities with a zero diagonal, labelled by work
// and author.
struct dissimilarity_matrix {
    std::size_t n = 0;
    std::vector<double> values; // row-major n*n
    std::vector<std::string> work_ids;
    std::vector<std::string> author_ids;

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

dissimilarity_matrix make_dissimilarity_matrix(
    const std::vector<deviation_vector>& vectors,
    dissimilarity_metric metric = dissimilarity_metric::one_minus_pearson);

struct anosim_result {
    double r = 0.0;
    double p_value = 1.0;
    std::uint64_t n_permutations = 0; // permutations actually evaluated
    std::uint64_t seed = 0;
    bool exact = false; // all distinct labelings enumerated instead of sampled
    double null_mean = 0.0;
    double null_sd = 0.0;
    double null_max = 0.0;
};

// Clarke's analysis of similarities. Dissimilarities are ranked with average
// ranks on ties and R = (mean between-group rank - mean within-group rank)
// normalized by n(n-1)/4, so R is 1 exactly under perfect separation. The
// p-value uses label permutations with the +1 convention; when the number of
// distinct labelings is within the requested budget they are enumerated
// exhaustively, which makes the p-value exact. Deterministic given the seed,
// independent of thread count.
anosim_result anosim(const dissimilarity_matrix& matrix, std::uint64_t n_permutations,
                     std::uint64_t seed, unsigned threads = 1);

// One corpus work: where it came from and who wrote it.
struct work_source {
    std::string author_id;
    std::string work_id;
    std::string path;
};

struct style_options {
    std::size_t k = 3000;
    dissimilarity_metric metric = dissimilarity_metric::one_minus_pearson;
    std::uint64_t n_permutations = 999;
    std::uint64_t seed = 0;
    std::uint64_t min_work_tokens = 2000;
    unsigned threads = 1;
    token_policy policy;
};

struct counted_work {
    std::string author_id;
    std::string work_id;
    frequency_table table;
};

struct style_outcome {
    anosim_result anosim;
    dissimilarity_matrix matrix;
    standard_profile profile;
    std::vector<std::string> excluded_works; // below the token minimum
};

// Full pipeline on pre-counted works: pooled profile, deviation vectors,
// dissimilarity matrix, ANOSIM.
style_outcome style_report(std::vector<counted_work> works, const style_options& options);

// Reads and counts the manifest entries (paths may be gzip), then runs the
// pipeline above.
style_outcome style_report(const std::vector<work_source>& sources, const style_options& options);

// Manifest rows: author_id<TAB>work_id<TAB>path. '#' lines are comments.
std::vector<work_source> read_work_manifest(std::istream& in,
                                            const std::string& base_dir = "");

} // namespace kernlex
