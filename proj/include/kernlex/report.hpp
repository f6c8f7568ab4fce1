#pragma once

#include "kernlex/drift.hpp"
#include "kernlex/ranking.hpp"
#include "kernlex/stylometry.hpp"
#include "kernlex/zipf.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace kernlex {

// Plot-data and report writers. All output is UTF-8, deterministic for
// identical inputs: doubles are printed with shortest round-trip formatting.

std::string format_double(double value);

// rank, count, relative_frequency, fitted_count, segment per row; fitted
// values come from the segment covering the rank.
void write_rank_frequency_tsv(const ranked_distribution& ranked,
                              const std::vector<power_law_fit>& segments, std::ostream& out);

// length, by_token mass, by_type mass.
void write_word_length_tsv(const std::map<std::size_t, double>& by_token,
                           const std::map<std::size_t, double>& by_type, std::ostream& out);

void write_drift_tsv(const std::vector<drift_point>& series, std::ostream& out);

// Same rows with the index columns replaced by span-smoothed values; the
// smoothing runs over the year axis within each interval group.
void write_drift_smoothed_tsv(const std::vector<drift_point>& series, std::size_t span,
                              std::ostream& out);

void write_cross_variety_tsv(const std::vector<variety_point>& series, std::ostream& out);
void write_cross_variety_smoothed_tsv(const std::vector<variety_point>& series, std::size_t span,
                                      std::ostream& out);

// Matrix with `work` and `author` label header rows.
void write_matrix_tsv(const dissimilarity_matrix& matrix, std::ostream& out);

void write_profile_tsv(const standard_profile& profile, std::ostream& out);

// SHA-256 of a file, lowercase hex.
std::string sha256_file_hex(const std::filesystem::path& path);

// Writes `manifest.json` inside `dir`: every regular file in the directory
// (sorted by name, the manifest itself excluded) with size and sha256.
void write_output_manifest(const std::filesystem::path& dir);

// Staged output directory: files are assembled under a temporary sibling of
// the target and promoted with a rename, so a crash never leaves a partial
// result at the final path. An existing target is replaced on commit.
class output_stage {
public:
    explicit output_stage(std::filesystem::path target);
    ~output_stage();

    output_stage(const output_stage&) = delete;
    output_stage& operator=(const output_stage&) = delete;

    const std::filesystem::path& dir() const { return staging_; }
    std::filesystem::path file(const std::string& name) const { return staging_ / name; }

    // Writes manifest.json and moves the staging directory to the target.
    void commit();

private:
    std::filesystem::path target_;
    std::filesystem::path staging_;
    bool committed_ = false;
};

} // namespace kernlex
