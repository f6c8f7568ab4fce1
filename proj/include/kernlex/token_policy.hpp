#pragma once

#include <cstddef>
#include <string>

namespace kernlex {

enum class word_boundary_rule {
    unicode_words,    // segment on character classes, like UAX#29 word breaks
    whitespace_split, // split on whitespace only, then trim edge punctuation
};

// Normalization policy applied by every ingest path. Identical (text, policy)
// pairs always yield identical token sequences.
struct token_policy {
    bool lowercase_fold = true;
    bool drop_numeric = true;
    bool drop_punctuation = true;
    std::size_t min_token_length = 1; // codepoints
    word_boundary_rule boundary = word_boundary_rule::unicode_words;
};

const char* to_string(word_boundary_rule rule);
word_boundary_rule boundary_rule_from_string(const std::string& name);

} // namespace kernlex
