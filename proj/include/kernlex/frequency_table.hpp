#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>

namespace kernlex {

// Word -> count map plus the token total. The atom of every analysis:
// mergeable, so counting can be sharded and year bins pooled.
class frequency_table {
public:
    struct string_hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const {
            return std::hash<std::string_view>{}(s);
        }
    };
    using map_type = std::unordered_map<std::string, std::uint64_t, string_hash, std::equal_to<>>;

    void add(std::string_view word, std::uint64_t n = 1);
    void merge(const frequency_table& other);

    std::uint64_t count_of(std::string_view word) const;
    std::uint64_t total_tokens() const { return total_; }
    std::size_t vocabulary_size() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }
    const map_type& counts() const { return counts_; }

    bool operator==(const frequency_table& other) const {
        return total_ == other.total_ && counts_ == other.counts_;
    }

private:
    map_type counts_;
    std::uint64_t total_ = 0;
};

// TSV serialization: a `#total_tokens<TAB>N` header followed by
// `word<TAB>count` rows in rank order. Round-trips losslessly.
void write_table_tsv(const frequency_table& table, std::ostream& out);
frequency_table read_table_tsv(std::istream& in);

} // namespace kernlex
