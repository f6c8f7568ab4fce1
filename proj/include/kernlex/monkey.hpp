#pragma once

#include "kernlex/tokenizer.hpp"

#include <cstdint>
#include <iosfwd>

namespace kernlex {

// Random-typing null model: characters are emitted i.i.d., each one a space
// with probability space_probability, otherwise a letter drawn uniformly
// from the first alphabet_size lowercase letters. Words are the maximal
// letter runs, so word lengths are geometric with parameter
// space_probability. The same seed always yields the same stream.
struct monkey_config {
    unsigned alphabet_size = 26; // 1..26
    double space_probability = 0.18;
    std::uint64_t target_tokens = 0;
    std::uint64_t seed = 0;
};

void validate(const monkey_config& config);

// Emits exactly target_tokens words.
void generate_monkey_text(const monkey_config& config, const token_sink& sink);

// Text form of the same stream: words separated by single spaces, newline
// every 16 words. Re-tokenizing the output reproduces the word stream.
void write_monkey_corpus(const monkey_config& config, std::ostream& out);

} // namespace kernlex
