#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "priceforge/calendar.hpp"

namespace priceforge {

inline constexpr std::size_t kHoursPerDay = 24;
inline constexpr std::size_t kQuartersPerHour = 4;
inline constexpr std::size_t kQuartersPerDay = kHoursPerDay * kQuartersPerHour;
inline constexpr std::size_t kDaysPerWeek = 7;

/// One contiguous span of whole days: hourly DA and quarter-hourly ID prices
/// in EUR/MWh. Negative prices are legal; every value is finite.
struct PriceSeries {
    Date start_date;
    std::vector<double> da;  // 24 * n_days
    std::vector<double> id;  // 96 * n_days
    std::size_t n_days = 0;

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

/// Throws Error{EmptyInput|DimensionMismatch|MalformedRow} when the invariants fail.
void validate(const PriceSeries& series);

struct DayRecord {
    std::size_t day_index = 0;  // 1-based
    int weekday = 0;            // Monday = 0
    Date date;
    std::vector<double> da;
    std::vector<double> id;
};

struct WeekRecord {
    std::size_t week_index = 0;  // 1-based
    std::vector<DayRecord> days;  // Monday .. Sunday
};

/// Sidecar JSON describing a price CSV.
struct Manifest {
    std::string market;  // "DA" or "ID3"
    int year = 0;
    std::string timezone = "Europe/Berlin";
};

Manifest parse_manifest(std::istream& in);

struct IngestOptions {
    std::string timezone = "Europe/Berlin";
    /// Longest run of missing (non-DST) intervals that is interpolated.
    std::size_t max_gap_fill = 2;
};

/// What the parser did to the raw rows to obtain whole 24/96-value days.
struct CalendarReport {
    std::string timezone;
    std::string dst_policy;
    std::vector<std::string> dst_events;
    std::vector<std::string> warnings;
    std::size_t dropped_leading_days = 0;
    std::size_t dropped_trailing_days = 0;
};

/// Both streams are `timestamp,price_eur_mwh` CSV, DA hourly and ID
/// quarter-hourly, in local market time.
PriceSeries parse_price_csv(std::istream& da_source, std::istream& id_source,
                            const IngestOptions& options = {}, CalendarReport* report = nullptr);

/// Writes the grid back out, one row per slot, prices with two decimals.
void write_price_csv(const PriceSeries& series, std::ostream& da_out, std::ostream& id_out);

std::vector<DayRecord> slice_days(const PriceSeries& series);
std::vector<WeekRecord> slice_weeks(const PriceSeries& series);

/// Optional day filter (e.g. drop weekends). Not applied anywhere by default.
std::vector<DayRecord> filter_days(std::span<const DayRecord> days,
                                   const std::function<bool(const DayRecord&)>& keep);

}  // namespace priceforge
