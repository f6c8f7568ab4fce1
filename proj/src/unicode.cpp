#include "kernlex/unicode.hpp"

#include "kernlex/error.hpp"

#include <algorithm>
#include <array>

namespace kernlex::unicode {

namespace {

struct cp_range {
    char32_t lo;
    char32_t hi;
};

template <std::size_t N>
bool in_ranges(const std::array<cp_range, N>& table, char32_t cp) {
    auto it = std::upper_bound(table.begin(), table.end(), cp,
                               [](char32_t v, const cp_range& r) { return v < r.lo; });
    return it != table.begin() && cp <= std::prev(it)->hi;
}

// Whitespace (White_Space property, the codepoints that occur in practice).
constexpr std::array<cp_range, 10> k_space{{
    {0x0009, 0x000D},
    {0x0020, 0x0020},
    {0x0085, 0x0085},
    {0x00A0, 0x00A0},
    {0x1680, 0x1680},
    {0x2000, 0x200A},
    {0x2028, 0x2029},
    {0x202F, 0x202F},
    {0x205F, 0x205F},
    {0x3000, 0x3000},
}};

// Decimal digits (Nd) of the major scripts.
constexpr std::array<cp_range, 21> k_digit{{
    {0x0030, 0x0039}, // ASCII
    {0x0660, 0x0669}, // Arabic-Indic
    {0x06F0, 0x06F9}, // Extended Arabic-Indic
    {0x07C0, 0x07C9}, // NKo
    {0x0966, 0x096F}, // Devanagari
    {0x09E6, 0x09EF}, // Bengali
    {0x0A66, 0x0A6F}, // Gurmukhi
    {0x0AE6, 0x0AEF}, // Gujarati
    {0x0B66, 0x0B6F}, // Oriya
    {0x0BE6, 0x0BEF}, // Tamil
    {0x0C66, 0x0C6F}, // Telugu
    {0x0CE6, 0x0CEF}, // Kannada
    {0x0D66, 0x0D6F}, // Malayalam
    {0x0E50, 0x0E59}, // Thai
    {0x0ED0, 0x0ED9}, // Lao
    {0x0F20, 0x0F29}, // Tibetan
    {0x1040, 0x1049}, // Myanmar
    {0x17E0, 0x17E9}, // Khmer
    {0x1810, 0x1819}, // Mongolian
    {0x1946, 0x194F}, // Limbu
    {0xFF10, 0xFF19}, // Fullwidth
}};

// Combining marks (Mn/Mc/Me, major blocks).
constexpr std::array<cp_range, 48> k_mark{{
    {0x0300, 0x036F}, {0x0483, 0x0489}, {0x0591, 0x05BD}, {0x05BF, 0x05BF},
    {0x05C1, 0x05C2}, {0x05C4, 0x05C5}, {0x05C7, 0x05C7}, {0x0610, 0x061A},
    {0x064B, 0x065F}, {0x0670, 0x0670}, {0x06D6, 0x06DC}, {0x06DF, 0x06E4},
    {0x06E7, 0x06E8}, {0x06EA, 0x06ED}, {0x0711, 0x0711}, {0x0730, 0x074A},
    {0x07A6, 0x07B0}, {0x07EB, 0x07F3}, {0x0816, 0x0823}, {0x0825, 0x082D},
    {0x08D3, 0x08FF}, {0x0900, 0x0903}, {0x093A, 0x093C}, {0x093E, 0x094F},
    {0x0951, 0x0957}, {0x0962, 0x0963}, {0x0981, 0x0983}, {0x09BC, 0x09BC},
    {0x09BE, 0x09CD}, {0x09D7, 0x09D7}, {0x09E2, 0x09E3}, {0x0A01, 0x0A03},
    {0x0A3C, 0x0A51}, {0x0A70, 0x0A75}, {0x0A81, 0x0A83}, {0x0ABC, 0x0ABC},
    {0x0ABE, 0x0ACD}, {0x0B01, 0x0B03}, {0x0B3C, 0x0B57}, {0x0BBE, 0x0BCD},
    {0x0C00, 0x0C04}, {0x0C3E, 0x0C56}, {0x0D3E, 0x0D4D}, {0x0E31, 0x0E31},
    {0x0E34, 0x0E3A}, {0x0E47, 0x0E4E}, {0x1AB0, 0x1AFF}, {0xFE00, 0xFE2F},
}};

// Punctuation and symbols that terminate a word. Unlisted codepoints above
// ASCII fall through to `letter`, so this table carries the blocks that are
// overwhelmingly punctuation or symbol.
constexpr std::array<cp_range, 42> k_other{{
    {0x0000, 0x0008}, {0x000E, 0x001F}, {0x0021, 0x0026}, {0x0028, 0x002F},
    {0x003A, 0x0040}, {0x005B, 0x0060}, {0x007B, 0x00A0}, {0x00A1, 0x00BF},
    {0x00D7, 0x00D7}, {0x00F7, 0x00F7}, {0x02B9, 0x02BB}, {0x02BD, 0x02DF},
    {0x02E5, 0x02FF}, {0x0375, 0x0375}, {0x037E, 0x037E}, {0x0384, 0x0385},
    {0x0387, 0x0387}, {0x0589, 0x058A}, {0x05BE, 0x05BE}, {0x05C0, 0x05C0},
    {0x05C3, 0x05C3}, {0x05C6, 0x05C6}, {0x05F3, 0x05F4}, {0x0600, 0x060F},
    {0x061B, 0x061F}, {0x066A, 0x066D}, {0x06D4, 0x06D4}, {0x0964, 0x0965},
    {0x0E4F, 0x0E5B}, {0x10FB, 0x10FB}, {0x1360, 0x1368}, {0x2010, 0x2018},
    {0x201A, 0x2027}, {0x2030, 0x205E}, {0x2060, 0x2BFF}, {0x2E00, 0x2E7F},
    {0x3001, 0x303F}, {0xFD3E, 0xFD3F}, {0xFE30, 0xFE6F}, {0xFF01, 0xFF0F},
    {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40},
}};

// Additional `other` spans outside the sorted main table.
bool is_other_extra(char32_t cp) {
    if (cp >= 0xFF5B && cp <= 0xFF65) return true;
    if (cp >= 0x1F000 && cp <= 0x1FFFF) return true; // emoji, symbols
    if (cp == 0x007F) return true;
    return false;
}

} // namespace

char_class classify(char32_t cp) {
    if (in_ranges(k_space, cp)) return char_class::space;
    // Word-internal joiners, context checked by the tokenizer.
    if (cp == 0x0027 || cp == 0x2019 || cp == 0x02BC) return char_class::mid_letter;
    if (cp == 0x002C || cp == 0x002E) return char_class::mid_num;
    if (in_ranges(k_digit, cp)) return char_class::digit;
    if (in_ranges(k_mark, cp)) return char_class::mark;
    if (in_ranges(k_other, cp) || is_other_extra(cp)) return char_class::other;
    if (cp < 0x80) {
        // Remaining ASCII: letters only.
        if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return char_class::letter;
        return char_class::other;
    }
    return char_class::letter;
}

char32_t fold_case(char32_t cp) {
    // ASCII
    if (cp >= 0x41 && cp <= 0x5A) return cp + 0x20;
    if (cp < 0xC0) return cp;
    // Latin-1
    if (cp <= 0xDE) {
        if (cp == 0xD7) return cp;
        return cp + 0x20;
    }
    // Latin Extended-A
    if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x0178) return 0x00FF;
    if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x017F) return 0x0073; // long s
    // Greek
    if (cp == 0x0386) return 0x03AC;
    if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
    if (cp == 0x038C) return 0x03CC;
    if (cp == 0x038E || cp == 0x038F) return cp + 0x3F;
    if (cp >= 0x0391 && cp <= 0x03A1) return cp + 0x20;
    if (cp >= 0x03A3 && cp <= 0x03AB) return cp + 0x20;
    // Cyrillic
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    if (cp >= 0x0460 && cp <= 0x0481) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x048A && cp <= 0x04BF) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x04C1 && cp <= 0x04CD) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x04D0 && cp <= 0x052F) return (cp % 2 == 0) ? cp + 1 : cp;
    // Armenian
    if (cp >= 0x0531 && cp <= 0x0556) return cp + 0x30;
    // Latin Extended Additional (covers Vietnamese)
    if (cp >= 0x1E00 && cp <= 0x1EFF) return (cp % 2 == 0) ? cp + 1 : cp;
    // Fullwidth Latin
    if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::size_t codepoint_count(std::string_view utf8) {
    std::size_t n = 0;
    for (unsigned char c : utf8) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

bool utf8_decoder::push(unsigned char byte, std::uint64_t byte_offset, char32_t& out) {
    if (remaining_ == 0) {
        if (byte < 0x80) {
            out = byte;
            return true;
        }
        sequence_start_ = byte_offset;
        if ((byte & 0xE0) == 0xC0) {
            acc_ = byte & 0x1F;
            remaining_ = 1;
            min_value_ = 0x80;
        } else if ((byte & 0xF0) == 0xE0) {
            acc_ = byte & 0x0F;
            remaining_ = 2;
            min_value_ = 0x800;
        } else if ((byte & 0xF8) == 0xF0) {
            acc_ = byte & 0x07;
            remaining_ = 3;
            min_value_ = 0x10000;
        } else {
            throw input_error("invalid UTF-8 lead byte at offset " + std::to_string(byte_offset));
        }
        return false;
    }
    if ((byte & 0xC0) != 0x80) {
        throw input_error("invalid UTF-8 continuation byte at offset " + std::to_string(byte_offset));
    }
    acc_ = (acc_ << 6) | (byte & 0x3F);
    if (--remaining_ > 0) return false;
    if (acc_ < min_value_ || acc_ > 0x10FFFF || (acc_ >= 0xD800 && acc_ <= 0xDFFF)) {
        throw input_error("invalid UTF-8 sequence ending at offset " + std::to_string(byte_offset));
    }
    out = acc_;
    return true;
}

void utf8_decoder::finish(std::uint64_t) const {
    if (remaining_ != 0) {
        throw input_error("truncated UTF-8 sequence at offset " + std::to_string(sequence_start_));
    }
}

} // namespace kernlex::unicode
