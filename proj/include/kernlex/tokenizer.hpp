#pragma once

#include "kernlex/token_policy.hpp"
#include "kernlex/unicode.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace kernlex {

using token_sink = std::function<void(std::string&&)>;

// Incremental tokenizer. Bytes may arrive in arbitrary chunks; the emitted
// token sequence depends only on the concatenated input and the policy.
//
// Segmentation under unicode_words:
//   - words are maximal runs of letters, digits and combining marks;
//   - an apostrophe between two letters is word-internal (doesn't, l'eau);
//   - ',' or '.' between two digits is numeric-internal (3.14, 10,000);
//   - runs of punctuation/symbols form punctuation tokens.
// Under whitespace_split tokens are whitespace-delimited runs; when
// drop_punctuation is set, punctuation is trimmed from both ends.
//
// Policy filters applied to every candidate token: purely numeric tokens are
// dropped when drop_numeric; purely punctuation tokens are dropped when
// drop_punctuation; tokens shorter than min_token_length codepoints are
// dropped; case folding happens before filtering.
class stream_tokenizer {
public:
    stream_tokenizer(const token_policy& policy, token_sink sink);

    void feed(std::string_view bytes);
    void finish();

    std::uint64_t bytes_consumed() const { return offset_; }

private:
    void accept(char32_t cp);
    void accept_unicode_words(char32_t cp, unicode::char_class cls);
    void accept_whitespace_split(char32_t cp, unicode::char_class cls);
    void flush_word();
    void flush_punct();
    void emit(std::string&& surface, std::size_t cp_len, bool is_numeric, bool is_punct);

    token_policy policy_;
    token_sink sink_;
    unicode::utf8_decoder decoder_;
    std::uint64_t offset_ = 0;

    // current word run
    std::string word_;
    std::size_t word_cps_ = 0;
    bool has_letter_ = false;
    bool has_digit_ = false;
    bool numeric_only_ = true; // digits plus numeric-internal marks only
    char32_t pending_mid_ = 0; // unconfirmed mid-letter/mid-num codepoint
    unicode::char_class pending_cls_ = unicode::char_class::other;

    // current punctuation run (unicode_words mode, drop_punctuation off)
    std::string punct_;
    std::size_t punct_cps_ = 0;

    // whitespace_split mode: raw codepoints of the current field
    std::vector<char32_t> field_;
    bool finished_ = false;
};

// Tokenizes a whole string. Equivalent to feeding the bytes through a
// stream_tokenizer in one chunk.
std::vector<std::string> tokenize(std::string_view text, const token_policy& policy);

} // namespace kernlex
