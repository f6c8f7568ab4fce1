#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace kernlex::unicode {

// Character classes used by word segmentation. The classifier is a compact
// range-table approximation of the Unicode properties that matter for word
// boundaries: it is exact for ASCII and the major bicameral scripts, and it
// defaults unknown non-ASCII codepoints to `letter` so that scripts without
// dedicated table entries still tokenize as word characters.
enum class char_class : std::uint8_t {
    letter,     // word-forming
    digit,      // decimal digit (Nd)
    mark,       // combining mark, extends the current word
    mid_letter, // apostrophe-like, word-internal between letters
    mid_num,    // ',' '.', numeric-internal between digits
    space,      // whitespace, always a boundary
    other       // punctuation, symbols, controls
};

char_class classify(char32_t cp);

// Simple (1:1) lowercase mapping for Latin, Greek, Cyrillic, Armenian and
// fullwidth Latin. Codepoints without a mapping are returned unchanged.
char32_t fold_case(char32_t cp);

// Appends `cp` to `out` as UTF-8.
void append_utf8(std::string& out, char32_t cp);

// Number of codepoints in a valid UTF-8 string.
std::size_t codepoint_count(std::string_view utf8);

// Incremental UTF-8 decoder. Feed bytes one at a time; `push` returns true
// when a codepoint is complete. Invalid sequences throw input_error naming
// the byte offset supplied by the caller.
class utf8_decoder {
public:
    bool push(unsigned char byte, std::uint64_t byte_offset, char32_t& out);

    // Call at end of input; throws if a sequence is still open.
    void finish(std::uint64_t byte_offset) const;

private:
    char32_t acc_ = 0;
    int remaining_ = 0;
    char32_t min_value_ = 0;
    std::uint64_t sequence_start_ = 0;
};

} // namespace kernlex::unicode
