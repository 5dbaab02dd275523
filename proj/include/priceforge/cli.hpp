#pragma once

#include <iosfwd>

namespace priceforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Command grammar:
///   ingest | profile (day|week) | stats | match | cluster | schedule | benchmark | synth
/// Returns 0 on success, 1 on a usage error, 2 on a data or solver error.
/// Messages go to `err`; nothing is thrown.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace priceforge::cli
