#include "priceforge/export.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "priceforge/error.hpp"

namespace priceforge::io {

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
        throw Error(ErrorCode::Io, "SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string input_fingerprint(std::string_view da_bytes, std::string_view id_bytes) {
    std::string framed;
    framed.reserve(da_bytes.size() + id_bytes.size() + 48);
    framed += "da:" + std::to_string(da_bytes.size()) + '\n';
    framed += da_bytes;
    framed += "id:" + std::to_string(id_bytes.size()) + '\n';
    framed += id_bytes;
    return sha256_hex(framed);
}

std::string format_price(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    std::string out = buf;
    if (out == "-0.00") {
        out = "0.00";
    }
    return out;
}

void write_series_csv(std::ostream& os, std::span<const double> values, std::string_view index_header,
                      std::string_view value_header) {
    os << index_header << ',' << value_header << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << (i + 1) << ',' << format_price(values[i]) << '\n';
    }
}

nlohmann::ordered_json summary_json(const stats::StatsSummary& s) {
    nlohmann::ordered_json out;
    out["min"] = s.min;
    out["max"] = s.max;
    out["mean"] = s.mean;
    out["std"] = s.std;
    out["integral"] = s.integral;
    return out;
}

nlohmann::ordered_json profile_bundle(const profile::ScenarioProfile& p, std::string_view horizon,
                                      std::string_view fingerprint) {
    nlohmann::ordered_json out;
    out["horizon"] = horizon;
    out["mode"] = profile::to_string(p.scaling.mode);
    if (p.scaling.mode == profile::ScalingMode::Extreme) {
        out["tail_fraction"] = p.scaling.tail_fraction;
    }
    out["beta"] = p.scaling.beta;
    out["gamma"] = p.scaling.gamma;
    out["da_mean"] = p.da_mean;
    out["input_sha256"] = fingerprint;
    const auto [da, id] = profile::profile_stats(p);
    out["da_stats"] = summary_json(da);
    out["id_stats"] = summary_json(id);
    if (horizon == "week") {
        out["weekdays"] = {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};
    }
    out["da"] = p.da;
    out["id"] = p.id;
    out["deviation"] = p.deviation;
    return out;
}

void write_file(const std::string& path, std::string_view text) {
    const std::filesystem::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path(), ec);
    }
    std::ofstream os(target, std::ios::binary);
    if (!os) {
        throw Error(ErrorCode::Io, "cannot write " + path);
    }
    os << text;
    if (!os) {
        throw Error(ErrorCode::Io, "write failed for " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace priceforge::io
