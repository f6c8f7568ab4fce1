#include "kernlex/monkey.hpp"

#include "kernlex/error.hpp"

#include <ostream>
#include <random>
#include <string>

namespace kernlex {

void validate(const monkey_config& config) {
    if (config.alphabet_size < 1 || config.alphabet_size > 26) {
        throw config_error("alphabet_size must be between 1 and 26");
    }
    if (!(config.space_probability > 0.0) || !(config.space_probability < 1.0)) {
        throw config_error("space_probability must lie strictly between 0 and 1");
    }
    if (config.target_tokens == 0) {
        throw config_error("target_tokens must be positive");
    }
}

namespace {

// mt19937_64 output mapped by hand so the stream is identical across
// standard library implementations (uniform_*_distribution is not portable).
struct char_source {
    explicit char_source(const monkey_config& config)
        : rng(config.seed), p(config.space_probability), k(config.alphabet_size) {}

    // ' ' or a letter
    char next() {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < p) return ' ';
        return static_cast<char>('a' + static_cast<unsigned>(rng() % k));
    }

    std::mt19937_64 rng;
    double p;
    unsigned k;
};

template <typename WordFn>
void run_words(const monkey_config& config, WordFn&& on_word) {
    validate(config);
    char_source chars(config);
    std::string word;
    std::uint64_t emitted = 0;
    while (emitted < config.target_tokens) {
        char c = chars.next();
        if (c == ' ') {
            if (!word.empty()) {
                ++emitted;
                on_word(std::move(word));
                word.clear();
            }
        } else {
            word.push_back(c);
        }
    }
}

} // namespace

void generate_monkey_text(const monkey_config& config, const token_sink& sink) {
    run_words(config, [&](std::string&& w) { sink(std::move(w)); });
}

void write_monkey_corpus(const monkey_config& config, std::ostream& out) {
    std::uint64_t column = 0;
    run_words(config, [&](std::string&& w) {
        if (column > 0) out << (column % 16 == 0 ? '\n' : ' ');
        out << w;
        ++column;
    });
    out << '\n';
}

} // namespace kernlex
