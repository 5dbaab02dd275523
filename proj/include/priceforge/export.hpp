#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "priceforge/profile.hpp"

namespace priceforge::io {

/// Lower-case hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// Provenance hash of a DA/ID input pair: SHA-256 over both file contents,
/// each prefixed by its byte length so boundaries are unambiguous.
std::string input_fingerprint(std::string_view da_bytes, std::string_view id_bytes);

/// Two-column CSV `<index_header>,<value_header>`, 1-based index, prices with
/// two decimals.
void write_series_csv(std::ostream& os, std::span<const double> values, std::string_view index_header,
                      std::string_view value_header = "price_eur_mwh");

/// `%.2f` with negative zero printed as 0.00.
std::string format_price(double value);

/// The shared JSON bundle for a built profile: scaling (mode, tail fraction,
/// beta, gamma at full precision), fingerprint, summaries and the vectors.
/// `horizon` is "day" or "week"; weeks also carry weekday labels.
nlohmann::ordered_json profile_bundle(const profile::ScenarioProfile& profile, std::string_view horizon,
                                      std::string_view fingerprint);

nlohmann::ordered_json summary_json(const stats::StatsSummary& summary);

/// Writes `text` to `path`, creating parent directories. Throws Io.
void write_file(const std::string& path, std::string_view text);
/// Reads a whole file. Throws Io.
std::string read_file(const std::string& path);

}  // namespace priceforge::io
