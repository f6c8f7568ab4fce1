#include "kernlex/tokenizer.hpp"

#include "kernlex/error.hpp"

#include <utility>

namespace kernlex {

using unicode::char_class;

const char* to_string(word_boundary_rule rule) {
    return rule == word_boundary_rule::unicode_words ? "unicode_words" : "whitespace_split";
}

word_boundary_rule boundary_rule_from_string(const std::string& name) {
    if (name == "unicode_words") return word_boundary_rule::unicode_words;
    if (name == "whitespace_split") return word_boundary_rule::whitespace_split;
    throw config_error("unknown word boundary rule: " + name);
}

stream_tokenizer::stream_tokenizer(const token_policy& policy, token_sink sink)
    : policy_(policy), sink_(std::move(sink)) {
    if (policy_.min_token_length == 0) {
        throw config_error("min_token_length must be positive");
    }
}

void stream_tokenizer::feed(std::string_view bytes) {
    for (char byte : bytes) {
        char32_t cp;
        if (decoder_.push(static_cast<unsigned char>(byte), offset_, cp)) {
            accept(cp);
        }
        ++offset_;
    }
}

void stream_tokenizer::finish() {
    if (finished_) return;
    decoder_.finish(offset_);
    if (policy_.boundary == word_boundary_rule::unicode_words) {
        if (pending_mid_ != 0) {
            flush_word();
            unicode::append_utf8(punct_, pending_mid_);
            ++punct_cps_;
            pending_mid_ = 0;
        }
        flush_word();
        flush_punct();
    } else {
        accept_whitespace_split(U' ', char_class::space);
    }
    finished_ = true;
}

void stream_tokenizer::accept(char32_t cp) {
    char_class cls = unicode::classify(cp);
    if (policy_.boundary == word_boundary_rule::unicode_words) {
        accept_unicode_words(cp, cls);
    } else {
        accept_whitespace_split(cp, cls);
    }
}

void stream_tokenizer::accept_unicode_words(char32_t cp, char_class cls) {
    // Resolve a pending word-internal candidate: it joins the word only when
    // the next solid character continues the same kind of run.
    if (pending_mid_ != 0) {
        bool joins = (cls == char_class::letter && pending_cls_ == char_class::mid_letter) ||
                     (cls == char_class::digit && pending_cls_ == char_class::mid_num);
        if (joins) {
            unicode::append_utf8(word_, pending_mid_);
            ++word_cps_;
            if (pending_cls_ == char_class::mid_letter) numeric_only_ = false;
        } else {
            flush_word();
            unicode::append_utf8(punct_, pending_mid_);
            ++punct_cps_;
        }
        pending_mid_ = 0;
    }

    switch (cls) {
    case char_class::letter:
        flush_punct();
        unicode::append_utf8(word_, policy_.lowercase_fold ? unicode::fold_case(cp) : cp);
        ++word_cps_;
        has_letter_ = true;
        numeric_only_ = false;
        break;
    case char_class::digit:
        flush_punct();
        unicode::append_utf8(word_, cp);
        ++word_cps_;
        has_digit_ = true;
        break;
    case char_class::mark:
        // Combining marks extend the current word; stray marks act as punctuation.
        if (!word_.empty()) {
            unicode::append_utf8(word_, cp);
        } else {
            unicode::append_utf8(punct_, cp);
            ++punct_cps_;
        }
        break;
    case char_class::mid_letter:
    case char_class::mid_num: {
        bool candidate = !word_.empty() &&
                         ((cls == char_class::mid_letter && has_letter_ && !has_digit_) ||
                          (cls == char_class::mid_num && numeric_only_ && has_digit_));
        if (candidate) {
            pending_mid_ = cp;
            pending_cls_ = cls;
        } else {
            flush_word();
            unicode::append_utf8(punct_, cp);
            ++punct_cps_;
        }
        break;
    }
    case char_class::space:
        flush_word();
        flush_punct();
        break;
    case char_class::other:
        flush_word();
        unicode::append_utf8(punct_, cp);
        ++punct_cps_;
        break;
    }
}

void stream_tokenizer::accept_whitespace_split(char32_t cp, char_class cls) {
    if (cls != char_class::space) {
        field_.push_back(cp);
        return;
    }
    if (field_.empty()) return;

    std::size_t lo = 0;
    std::size_t hi = field_.size();
    auto trimmable = [](char_class c) {
        return c == char_class::other || c == char_class::mid_letter || c == char_class::mid_num;
    };
    if (policy_.drop_punctuation) {
        while (lo < hi && trimmable(unicode::classify(field_[lo]))) ++lo;
        while (hi > lo && trimmable(unicode::classify(field_[hi - 1]))) --hi;
    }
    if (lo < hi) {
        std::string surface;
        bool any_letter = false;
        bool any_digit = false;
        bool numeric_shape = true; // digits and ',' '.' only
        for (std::size_t i = lo; i < hi; ++i) {
            char32_t c = field_[i];
            char_class k = unicode::classify(c);
            if (k == char_class::letter) any_letter = true;
            if (k == char_class::digit) any_digit = true;
            if (k != char_class::digit && k != char_class::mid_num) numeric_shape = false;
            unicode::append_utf8(surface, policy_.lowercase_fold ? unicode::fold_case(c) : c);
        }
        emit(std::move(surface), hi - lo, any_digit && numeric_shape, !any_letter && !any_digit);
    }
    field_.clear();
}

void stream_tokenizer::flush_word() {
    if (word_.empty()) return;
    emit(std::move(word_), word_cps_, has_digit_ && numeric_only_, false);
    word_.clear();
    word_cps_ = 0;
    has_letter_ = false;
    has_digit_ = false;
    numeric_only_ = true;
}

void stream_tokenizer::flush_punct() {
    if (punct_.empty()) return;
    emit(std::move(punct_), punct_cps_, false, true);
    punct_.clear();
    punct_cps_ = 0;
}

void stream_tokenizer::emit(std::string&& surface, std::size_t cp_len, bool is_numeric, bool is_punct) {
    if (is_punct && policy_.drop_punctuation) return;
    if (is_numeric && policy_.drop_numeric) return;
    if (cp_len < policy_.min_token_length) return;
    sink_(std::move(surface));
}

std::vector<std::string> tokenize(std::string_view text, const token_policy& policy) {
    std::vector<std::string> tokens;
    stream_tokenizer t(policy, [&](std::string&& w) { tokens.push_back(std::move(w)); });
    t.feed(text);
    t.finish();
    return tokens;
}

} // namespace kernlex
