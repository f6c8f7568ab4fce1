#pragma once

#include "kernlex/token_policy.hpp"
#include "kernlex/tokenizer.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <istream>
#include <memory>
#include <string>

namespace kernlex {

struct ingest_stats {
    std::uint64_t lines_total = 0;     // non-empty input lines seen
    std::uint64_t malformed_lines = 0; // skipped: missing columns, bad numbers
    std::uint64_t records_emitted = 0;
    std::uint64_t dropped_by_policy = 0;
    std::uint64_t dropped_by_year_filter = 0;
};

// Streams a plain-text source through the tokenizer. Memory use is bounded
// by the buffer size regardless of input length.
void read_plain_text(std::istream& in, const token_policy& policy, const token_sink& sink,
                     std::size_t buffer_size = 1 << 16);

// Leipzig sentence files: delimiter-separated records, one sentence per line.
// Only `text_column` (0-based) is tokenized. Lines lacking the column are
// counted as malformed and skipped; if every non-empty line is malformed the
// column configuration is considered wrong and an input_error is thrown.
ingest_stats read_leipzig_sentences(std::istream& in, std::size_t text_column, char delimiter,
                                    const token_policy& policy, const token_sink& sink);

struct google_column_map {
    std::size_t word = 0;
    std::size_t year = 1;
    std::size_t count = 2;
};

struct year_range {
    int lo = 1500;
    int hi = 2009;
};

struct yeared_count {
    std::string word;
    int year = 0;
    std::uint64_t count = 0;
};

// Google Books 1-gram rows: tab-separated word/year/count at configurable
// positions. The word field is passed through the token policy; an entry
// whose surface splits into several tokens (hyphenated forms and the like)
// contributes its count to each resulting token, matching what tokenizing
// the underlying text would have produced. Rows with non-integer year or
// count fields are skipped and counted unless `strict`, in which case they
// raise input_error.
ingest_stats read_google_1grams(std::istream& in, const google_column_map& columns,
                                const year_range& years, const token_policy& policy, bool strict,
                                const std::function<void(yeared_count&&)>& sink);

// Opens a file for reading, transparently inflating gzip input (detected by
// magic bytes, not extension). Throws input_error when the file cannot be
// opened or the compressed stream is corrupt.
std::unique_ptr<std::istream> open_input(const std::string& path);

} // namespace kernlex
