#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace priceforge {

using Date = std::chrono::year_month_day;

/// A wall-clock timestamp in local market time.
struct LocalTimestamp {
    Date date;
    int minute_of_day = 0;  // 0 .. 1439

    friend bool operator==(const LocalTimestamp&, const LocalTimestamp&) = default;
};

/// Accepts `YYYY-MM-DD` followed by `T` or a space and `HH:MM[:SS]`, with an
/// optional `Z` or `+HH:MM`/`-HH:MM` suffix that is ignored (fields are read as
/// local time).
std::optional<LocalTimestamp> parse_timestamp(std::string_view text);
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& date);
std::string format_timestamp(const Date& date, int minute_of_day);

Date add_days(const Date& date, long days);
long days_between(const Date& from, const Date& to);

/// Monday = 0 ... Sunday = 6.
int weekday_index(const Date& date);

/// Daylight-saving convention of the market's local clock.
enum class DstRule { None, EuropeanUnion };

/// UTC/GMT style names map to `None`; everything else to the EU rule.
DstRule dst_rule_for_timezone(std::string_view timezone);

/// Day on which 02:00-02:59 local time does not exist.
bool is_spring_forward(const Date& date, DstRule rule);
/// Day on which 02:00-02:59 local time occurs twice.
bool is_fall_back(const Date& date, DstRule rule);

inline constexpr int kDstHour = 2;

}  // namespace priceforge
