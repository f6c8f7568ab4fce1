#include "kernlex/report.hpp"

#include "kernlex/error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <system_error>

namespace kernlex {

std::string format_double(double value) {
    // Shortest representation that round-trips; matches the JSON writer.
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_rank_frequency_tsv(const ranked_distribution& ranked,
                              const std::vector<power_law_fit>& segments, std::ostream& out) {
    out << "rank\tcount\trelative_frequency\tfitted_count\tsegment\n";
    for (const auto& entry : ranked.entries()) {
        int segment_index = -1;
        double fitted = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t s = 0; s < segments.size(); ++s) {
            if (entry.rank >= segments[s].rank_lo && entry.rank <= segments[s].rank_hi) {
                segment_index = static_cast<int>(s);
                fitted = std::exp(segments[s].log_intercept +
                                  segments[s].exponent * std::log(static_cast<double>(entry.rank)));
                break;
            }
        }
        out << entry.rank << '\t' << entry.count << '\t' << format_double(entry.relative_frequency)
            << '\t' << (segment_index < 0 ? "NA" : format_double(fitted)) << '\t';
        if (segment_index < 0) {
            out << "NA\n";
        } else {
            out << segment_index << '\n';
        }
    }
}

void write_word_length_tsv(const std::map<std::size_t, double>& by_token,
                           const std::map<std::size_t, double>& by_type, std::ostream& out) {
    out << "length\tby_token\tby_type\n";
    std::map<std::size_t, std::pair<double, double>> joined;
    for (const auto& [len, mass] : by_token) joined[len].first = mass;
    for (const auto& [len, mass] : by_type) joined[len].second = mass;
    for (const auto& [len, masses] : joined) {
        out << len << '\t' << format_double(masses.first) << '\t' << format_double(masses.second)
            << '\n';
    }
}

void write_drift_tsv(const std::vector<drift_point>& series, std::ostream& out) {
    out << "interval\tyear_a\tyear_b\tcosine\tspearman\tshared_words\n";
    for (const auto& p : series) {
        out << p.interval << '\t' << p.year_a << '\t' << p.year_b << '\t'
            << format_double(p.cosine) << '\t' << format_double(p.spearman) << '\t'
            << p.shared_words << '\n';
    }
}

void write_drift_smoothed_tsv(const std::vector<drift_point>& series, std::size_t span,
                              std::ostream& out) {
    out << "interval\tyear_a\tyear_b\tcosine_smoothed\tspearman_smoothed\n";
    std::size_t i = 0;
    while (i < series.size()) {
        std::size_t j = i;
        while (j < series.size() && series[j].interval == series[i].interval) ++j;
        std::vector<double> cosines, spearmans;
        for (std::size_t t = i; t < j; ++t) {
            cosines.push_back(series[t].cosine);
            spearmans.push_back(series[t].spearman);
        }
        auto sc = moving_average(cosines, span);
        auto ss = moving_average(spearmans, span);
        for (std::size_t t = i; t < j; ++t) {
            out << series[t].interval << '\t' << series[t].year_a << '\t' << series[t].year_b
                << '\t' << format_double(sc[t - i]) << '\t' << format_double(ss[t - i]) << '\n';
        }
        i = j;
    }
}

void write_cross_variety_tsv(const std::vector<variety_point>& series, std::ostream& out) {
    out << "year\tcosine\tspearman\tshared_words\n";
    for (const auto& p : series) {
        out << p.year << '\t' << format_double(p.cosine) << '\t' << format_double(p.spearman)
            << '\t' << p.shared_words << '\n';
    }
}

void write_cross_variety_smoothed_tsv(const std::vector<variety_point>& series, std::size_t span,
                                      std::ostream& out) {
    out << "year\tcosine_smoothed\tspearman_smoothed\n";
    std::vector<double> cosines, spearmans;
    for (const auto& p : series) {
        cosines.push_back(p.cosine);
        spearmans.push_back(p.spearman);
    }
    auto sc = moving_average(cosines, span);
    auto ss = moving_average(spearmans, span);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series[i].year << '\t' << format_double(sc[i]) << '\t' << format_double(ss[i])
            << '\n';
    }
}

void write_matrix_tsv(const dissimilarity_matrix& matrix, std::ostream& out) {
    out << "work";
    for (const auto& id : matrix.work_ids) out << '\t' << id;
    out << "\nauthor";
    for (const auto& id : matrix.author_ids) out << '\t' << id;
    out << '\n';
    for (std::size_t i = 0; i < matrix.n; ++i) {
        out << matrix.work_ids[i];
        for (std::size_t j = 0; j < matrix.n; ++j) {
            out << '\t' << format_double(matrix.at(i, j));
        }
        out << '\n';
    }
}

void write_profile_tsv(const standard_profile& profile, std::ostream& out) {
    out << "rank\tword\tf\n";
    for (std::size_t i = 0; i < profile.words.size(); ++i) {
        out << (i + 1) << '\t' << profile.words[i] << '\t' << format_double(profile.f[i]) << '\n';
    }
}

std::string sha256_file_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw input_error("cannot open file for hashing: " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw error("cannot allocate digest context");
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (in) {
        in.read(buf, sizeof(buf));
        std::streamsize got = in.gcount();
        if (got > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(got));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * static_cast<std::size_t>(len));
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

void write_output_manifest(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().filename() != "manifest.json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    nlohmann::json manifest;
    manifest["outputs"] = nlohmann::json::array();
    for (const auto& file : files) {
        manifest["outputs"].push_back({
            {"path", file.filename().string()},
            {"bytes", std::filesystem::file_size(file)},
            {"sha256", sha256_file_hex(file)},
        });
    }
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
    if (!out) throw input_error("cannot write manifest.json in " + dir.string());
}

output_stage::output_stage(std::filesystem::path target) : target_(std::move(target)) {
    if (target_.empty()) throw config_error("output directory not set");
    auto parent = target_.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    staging_ = target_;
    staging_ += ".staging";
    std::error_code ec;
    std::filesystem::remove_all(staging_, ec);
    if (!std::filesystem::create_directories(staging_)) {
        throw input_error("cannot create staging directory " + staging_.string());
    }
}

output_stage::~output_stage() {
    if (!committed_) {
        std::error_code ec;
        std::filesystem::remove_all(staging_, ec);
    }
}

void output_stage::commit() {
    write_output_manifest(staging_);
    std::error_code ec;
    std::filesystem::remove_all(target_, ec);
    std::filesystem::rename(staging_, target_);
    committed_ = true;
}

} // namespace kernlex
