#pragma once

#include "kernlex/frequency_table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kernlex {

struct ranked_entry {
    std::uint32_t rank = 0; // 1-based
    std::string word;
    std::uint64_t count = 0;
    double relative_frequency = 0.0;
};

// Frequency-sorted view of a table. Counts are non-increasing in rank; equal
// counts are broken by ascending lexicographic (byte) order of the word, so
// the ordering is deterministic and reproducible across runs.
class ranked_distribution {
public:
    ranked_distribution(std::vector<ranked_entry> entries, std::uint64_t total_tokens)
        : entries_(std::move(entries)), total_tokens_(total_tokens) {}

    const std::vector<ranked_entry>& entries() const { return entries_; }
    const ranked_entry& at_rank(std::uint32_t rank) const { return entries_[rank - 1]; }
    std::size_t size() const { return entries_.size(); }
    std::uint64_t total_tokens() const { return total_tokens_; }

private:
    std::vector<ranked_entry> entries_;
    std::uint64_t total_tokens_ = 0;
};

// Throws analysis_error on an empty table.
ranked_distribution rank_table(const frequency_table& table);

struct kernel_entry {
    std::string word;
    std::uint32_t rank = 0;
    std::uint64_t count = 0;
    double relative_frequency = 0.0;
};

// The top-K words of a ranked distribution; the unit compared across years,
// varieties and authors.
class kernel_lexicon {
public:
    kernel_lexicon(std::vector<kernel_entry> members, std::size_t k)
        : members_(std::move(members)), k_(k) {}

    const std::vector<kernel_entry>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::size_t requested_k() const { return k_; }

private:
    std::vector<kernel_entry> members_;
    std::size_t k_ = 0;
};

// Throws config_error when k is zero.
kernel_lexicon take_kernel(const ranked_distribution& ranked, std::size_t k = 3000);

} // namespace kernlex
