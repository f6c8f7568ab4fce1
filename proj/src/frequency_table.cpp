#include "kernlex/frequency_table.hpp"

#include "kernlex/error.hpp"
#include "kernlex/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>

namespace kernlex {

void frequency_table::add(std::string_view word, std::uint64_t n) {
    if (n == 0) return;
    if (total_ > std::numeric_limits<std::uint64_t>::max() - n) {
        throw analysis_error("token count overflow");
    }
    auto it = counts_.find(word);
    if (it == counts_.end()) {
        counts_.emplace(std::string(word), n);
    } else {
        it->second += n;
    }
    total_ += n;
}

void frequency_table::merge(const frequency_table& other) {
    for (const auto& [word, n] : other.counts_) {
        add(word, n);
    }
}

std::uint64_t frequency_table::count_of(std::string_view word) const {
    auto it = counts_.find(word);
    return it == counts_.end() ? 0 : it->second;
}

void write_table_tsv(const frequency_table& table, std::ostream& out) {
    out << "#total_tokens\t" << table.total_tokens() << "\n";
    if (table.empty()) return;
    auto ranked = rank_table(table);
    for (const auto& entry : ranked.entries()) {
        out << entry.word << '\t' << entry.count << '\n';
    }
}

frequency_table read_table_tsv(std::istream& in) {
    frequency_table table;
    std::string line;
    if (!std::getline(in, line)) throw input_error("empty frequency table file");
    std::uint64_t declared_total = 0;
    {
        std::string_view header(line);
        if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
        constexpr std::string_view prefix = "#total_tokens\t";
        if (header.substr(0, prefix.size()) != prefix) {
            throw input_error("frequency table missing #total_tokens header");
        }
        std::string_view value = header.substr(prefix.size());
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), declared_total);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw input_error("bad total_tokens value in frequency table header");
        }
    }
    std::uint64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body(line);
        if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
        if (body.empty()) continue;
        std::size_t tab = body.rfind('\t');
        if (tab == std::string_view::npos || tab == 0) {
            throw input_error("malformed frequency table row at line " + std::to_string(line_no));
        }
        std::string_view count_field = body.substr(tab + 1);
        std::uint64_t count = 0;
        auto [ptr, ec] = std::from_chars(count_field.data(), count_field.data() + count_field.size(), count);
        if (ec != std::errc() || ptr != count_field.data() + count_field.size() || count == 0) {
            throw input_error("bad count at line " + std::to_string(line_no));
        }
        table.add(body.substr(0, tab), count);
    }
    if (in.bad()) throw input_error("I/O failure while reading frequency table");
    if (table.total_tokens() != declared_total) {
        throw input_error("frequency table header total does not match the sum of counts");
    }
    return table;
}

ranked_distribution rank_table(const frequency_table& table) {
    if (table.empty()) throw analysis_error("cannot rank an empty frequency table");
    std::vector<ranked_entry> entries;
    entries.reserve(table.vocabulary_size());
    for (const auto& [word, count] : table.counts()) {
        entries.push_back(ranked_entry{0, word, count, 0.0});
    }
    std::sort(entries.begin(), entries.end(), [](const ranked_entry& a, const ranked_entry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.word < b.word;
    });
    double total = static_cast<double>(table.total_tokens());
    std::uint32_t rank = 0;
    for (auto& entry : entries) {
        entry.rank = ++rank;
        entry.relative_frequency = static_cast<double>(entry.count) / total;
    }
    return ranked_distribution(std::move(entries), table.total_tokens());
}

kernel_lexicon take_kernel(const ranked_distribution& ranked, std::size_t k) {
    if (k == 0) throw config_error("kernel size must be positive");
    std::size_t take = std::min(k, ranked.size());
    std::vector<kernel_entry> members;
    members.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        const auto& e = ranked.entries()[i];
        members.push_back(kernel_entry{e.word, e.rank, e.count, e.relative_frequency});
    }
    return kernel_lexicon(std::move(members), k);
}

} // namespace kernlex
