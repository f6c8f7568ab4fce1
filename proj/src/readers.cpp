#include "kernlex/readers.hpp"

#include "kernlex/error.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <streambuf>
#include <vector>

namespace kernlex {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

template <typename T>
bool parse_integer(std::string_view field, T& out) {
    if (field.empty()) return false;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc() && ptr == field.data() + field.size();
}

// Strips a trailing '\r' so CRLF files parse like LF files.
std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

} // namespace

void read_plain_text(std::istream& in, const token_policy& policy, const token_sink& sink,
                     std::size_t buffer_size) {
    if (buffer_size == 0) throw config_error("buffer_size must be positive");
    stream_tokenizer tokenizer(policy, sink);
    std::vector<char> buffer(buffer_size);
    while (in) {
        in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        std::streamsize got = in.gcount();
        if (got > 0) tokenizer.feed(std::string_view(buffer.data(), static_cast<std::size_t>(got)));
        if (in.bad()) throw input_error("I/O failure while reading text stream");
    }
    tokenizer.finish();
}

ingest_stats read_leipzig_sentences(std::istream& in, std::size_t text_column, char delimiter,
                                    const token_policy& policy, const token_sink& sink) {
    ingest_stats stats;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view body = chomp(line);
        if (body.empty()) continue;
        ++stats.lines_total;
        auto fields = split_fields(body, delimiter);
        if (text_column >= fields.size()) {
            ++stats.malformed_lines;
            continue;
        }
        stream_tokenizer tokenizer(policy, [&](std::string&& w) {
            ++stats.records_emitted;
            sink(std::move(w));
        });
        tokenizer.feed(fields[text_column]);
        tokenizer.finish();
    }
    if (in.bad()) throw input_error("I/O failure while reading sentence file");
    if (stats.lines_total > 0 && stats.malformed_lines == stats.lines_total) {
        throw input_error("text column " + std::to_string(text_column) +
                          " missing on every line; wrong column configuration?");
    }
    return stats;
}

ingest_stats read_google_1grams(std::istream& in, const google_column_map& columns,
                                const year_range& years, const token_policy& policy, bool strict,
                                const std::function<void(yeared_count&&)>& sink) {
    if (years.lo > years.hi) throw config_error("year filter lo exceeds hi");
    ingest_stats stats;
    std::string line;
    std::uint64_t line_no = 0;
    std::size_t needed = std::max(columns.word, std::max(columns.year, columns.count)) + 1;
    auto malformed = [&](const char* what) {
        if (strict) {
            throw input_error(std::string(what) + " at line " + std::to_string(line_no));
        }
        ++stats.malformed_lines;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = chomp(line);
        if (body.empty()) continue;
        ++stats.lines_total;
        auto fields = split_fields(body, '\t');
        if (fields.size() < needed) {
            malformed("missing column");
            continue;
        }
        int year = 0;
        std::uint64_t count = 0;
        if (!parse_integer(fields[columns.year], year)) {
            malformed("non-integer year");
            continue;
        }
        if (!parse_integer(fields[columns.count], count)) {
            malformed("non-integer count");
            continue;
        }
        if (year < years.lo || year > years.hi) {
            ++stats.dropped_by_year_filter;
            continue;
        }
        auto tokens = tokenize(fields[columns.word], policy);
        if (tokens.empty()) {
            ++stats.dropped_by_policy;
            continue;
        }
        for (auto& token : tokens) {
            ++stats.records_emitted;
            sink(yeared_count{std::move(token), year, count});
        }
    }
    if (in.bad()) throw input_error("I/O failure while reading 1-gram file");
    return stats;
}

namespace {

// streambuf that inflates gzip/zlib data from an underlying file.
class gzip_streambuf : public std::streambuf {
public:
    explicit gzip_streambuf(std::unique_ptr<std::ifstream> file, const std::string& path)
        : file_(std::move(file)), path_(path) {
        stream_.zalloc = Z_NULL;
        stream_.zfree = Z_NULL;
        stream_.opaque = Z_NULL;
        stream_.next_in = Z_NULL;
        stream_.avail_in = 0;
        // 15 window bits + 32: auto-detect zlib or gzip framing
        if (inflateInit2(&stream_, 15 + 32) != Z_OK) {
            throw input_error("cannot initialize decompressor for " + path_);
        }
        setg(out_.data(), out_.data(), out_.data());
    }

    ~gzip_streambuf() override { inflateEnd(&stream_); }

protected:
    int_type underflow() override {
        if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
        if (finished_) return traits_type::eof();

        stream_.next_out = reinterpret_cast<Bytef*>(out_.data());
        stream_.avail_out = static_cast<uInt>(out_.size());
        while (stream_.avail_out > 0) {
            if (stream_.avail_in == 0 && !eof_) {
                file_->read(in_.data(), static_cast<std::streamsize>(in_.size()));
                std::streamsize got = file_->gcount();
                if (file_->bad()) throw input_error("I/O failure while reading " + path_);
                eof_ = got == 0;
                stream_.next_in = reinterpret_cast<Bytef*>(in_.data());
                stream_.avail_in = static_cast<uInt>(got);
            }
            int rc = inflate(&stream_, eof_ ? Z_FINISH : Z_NO_FLUSH);
            if (rc == Z_STREAM_END) {
                finished_ = true;
                break;
            }
            if (rc != Z_OK && rc != Z_BUF_ERROR) {
                throw input_error("corrupt compressed data in " + path_);
            }
            if (rc == Z_BUF_ERROR && eof_ && stream_.avail_in == 0) {
                throw input_error("truncated compressed data in " + path_);
            }
        }
        std::size_t produced = out_.size() - stream_.avail_out;
        if (produced == 0) return traits_type::eof();
        setg(out_.data(), out_.data(), out_.data() + produced);
        return traits_type::to_int_type(*gptr());
    }

private:
    std::unique_ptr<std::ifstream> file_;
    std::string path_;
    z_stream stream_{};
    std::array<char, 1 << 15> in_{};
    std::array<char, 1 << 15> out_{};
    bool eof_ = false;
    bool finished_ = false;
};

class gzip_istream : public std::istream {
public:
    gzip_istream(std::unique_ptr<std::ifstream> file, const std::string& path)
        : std::istream(nullptr), buf_(std::move(file), path) {
        rdbuf(&buf_);
        // let decompressor errors propagate instead of being eaten as badbit
        exceptions(std::ios::badbit);
    }

private:
    gzip_streambuf buf_;
};

} // namespace

std::unique_ptr<std::istream> open_input(const std::string& path) {
    auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!file->is_open()) throw input_error("cannot open input file: " + path);
    int b0 = file->get();
    int b1 = file->get();
    file->clear();
    file->seekg(0);
    if (b0 == 0x1f && b1 == 0x8b) {
        return std::make_unique<gzip_istream>(std::move(file), path);
    }
    return file;
}

} // namespace kernlex
