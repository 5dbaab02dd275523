#include "priceforge/calendar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace priceforge {

namespace {

std::optional<int> read_int(std::string_view text, std::size_t pos, std::size_t width) {
    if (pos + width > text.size()) {
        return std::nullopt;
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + width; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return std::nullopt;
        }
        value = value * 10 + (text[i] - '0');
    }
    return value;
}

Date last_sunday(std::chrono::year year, std::chrono::month month) {
    using namespace std::chrono;
    const sys_days end{year / month / std::chrono::last};
    const weekday wd{end};
    const auto back = (wd - Sunday).count();
    return Date{end - days{back}};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto y = read_int(text, 0, 4);
    auto m = read_int(text, 5, 2);
    auto d = read_int(text, 8, 2);
    if (!y || !m || !d) {
        return std::nullopt;
    }
    Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
              std::chrono::day{static_cast<unsigned>(*d)}};
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

std::optional<LocalTimestamp> parse_timestamp(std::string_view text) {
    if (text.size() < 16 || (text[10] != 'T' && text[10] != ' ')) {
        return std::nullopt;
    }
    auto date = parse_date(text.substr(0, 10));
    auto hh = read_int(text, 11, 2);
    auto mm = read_int(text, 14, 2);
    if (!date || !hh || !mm || text[13] != ':' || *hh > 23 || *mm > 59) {
        return std::nullopt;
    }
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
        auto ss = read_int(text, pos + 1, 2);
        if (!ss || *ss != 0) {
            return std::nullopt;
        }
        pos += 3;
    }
    std::string_view rest = text.substr(pos);
    if (!rest.empty()) {
        const bool utc = rest == "Z";
        const bool offset = rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') && rest[3] == ':' &&
                            read_int(rest, 1, 2) && read_int(rest, 4, 2);
        if (!utc && !offset) {
            return std::nullopt;
        }
    }
    return LocalTimestamp{*date, *hh * 60 + *mm};
}

std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

std::string format_timestamp(const Date& date, int minute_of_day) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02d:%02d", minute_of_day / 60, minute_of_day % 60);
    return format_date(date) + "T" + buf;
}

Date add_days(const Date& date, long days) {
    return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

long days_between(const Date& from, const Date& to) {
    return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

int weekday_index(const Date& date) {
    const std::chrono::weekday wd{std::chrono::sys_days{date}};
    return static_cast<int>(wd.iso_encoding()) - 1;
}

DstRule dst_rule_for_timezone(std::string_view timezone) {
    std::string tz(timezone);
    std::transform(tz.begin(), tz.end(), tz.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (tz == "UTC" || tz == "GMT" || tz == "ETC/UTC" || tz == "ETC/GMT" || tz == "Z") {
        return DstRule::None;
    }
    return DstRule::EuropeanUnion;
}

bool is_spring_forward(const Date& date, DstRule rule) {
    return rule == DstRule::EuropeanUnion && date == last_sunday(date.year(), std::chrono::March);
}

bool is_fall_back(const Date& date, DstRule rule) {
    return rule == DstRule::EuropeanUnion && date == last_sunday(date.year(), std::chrono::October);
}

}  // namespace priceforge
