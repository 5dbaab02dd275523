#include "priceforge/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "priceforge/error.hpp"

namespace priceforge {

namespace {

constexpr std::string_view kHeader = "timestamp,price_eur_mwh";

struct Row {
    LocalTimestamp stamp;
    double price = 0.0;
    std::size_t line = 0;
};

struct MarketGrid {
    std::string label;
    std::size_t slots_per_day = 0;
    int step_minutes = 0;
};

struct AssembledMarket {
    Date start;
    std::size_t n_days = 0;
    std::vector<double> values;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    return s;
}

std::optional<double> parse_price(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::vector<Row> read_rows(std::istream& in, const MarketGrid& grid) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (!header_seen) {
            if (view.size() >= 3 && static_cast<unsigned char>(view[0]) == 0xEF &&
                static_cast<unsigned char>(view[1]) == 0xBB && static_cast<unsigned char>(view[2]) == 0xBF) {
                view.remove_prefix(3);
            }
            if (view != kHeader) {
                throw Error(ErrorCode::MalformedRow,
                            grid.label + ": expected header '" + std::string(kHeader) + "'", line_no);
            }
            header_seen = true;
            continue;
        }
        if (view.empty()) {
            continue;
        }
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
            throw Error(ErrorCode::MalformedRow, grid.label + ": expected two fields", line_no);
        }
        auto stamp = parse_timestamp(trim(view.substr(0, comma)));
        if (!stamp) {
            throw Error(ErrorCode::MalformedRow, grid.label + ": unparseable timestamp", line_no);
        }
        if (stamp->minute_of_day % grid.step_minutes != 0) {
            throw Error(ErrorCode::MalformedRow,
                        grid.label + ": timestamp off the " + std::to_string(grid.step_minutes) + "-minute grid",
                        line_no);
        }
        auto price = parse_price(trim(view.substr(comma + 1)));
        if (!price) {
            throw Error(ErrorCode::MalformedRow, grid.label + ": unparseable price", line_no);
        }
        rows.push_back({*stamp, *price, line_no});
    }
    if (!header_seen) {
        throw Error(ErrorCode::MalformedRow, grid.label + ": empty input", 1);
    }
    if (rows.empty()) {
        throw Error(ErrorCode::MalformedRow, grid.label + ": no data rows", line_no + 1);
    }
    return rows;
}

AssembledMarket assemble(std::vector<Row> rows, const MarketGrid& grid, DstRule rule, const IngestOptions& options,
                         CalendarReport* report) {
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.stamp.date != b.stamp.date) {
            return a.stamp.date < b.stamp.date;
        }
        return a.stamp.minute_of_day < b.stamp.minute_of_day;
    });

    const std::size_t slots = grid.slots_per_day;
    const auto slot_of = [&](const Row& r) { return static_cast<std::size_t>(r.stamp.minute_of_day / grid.step_minutes); };
    const auto is_dst_slot = [&](std::size_t slot) {
        return static_cast<int>(slot) * grid.step_minutes / 60 == kDstHour;
    };

    const Date first_date = rows.front().stamp.date;
    const Date last_date = rows.back().stamp.date;
    const bool first_complete = rows.front().stamp.minute_of_day == 0;
    const bool last_complete = slot_of(rows.back()) == slots - 1;

    Date start = first_date;
    Date end = last_date;
    std::size_t dropped_leading = 0;
    std::size_t dropped_trailing = 0;
    if (!first_complete) {
        start = add_days(start, 1);
        dropped_leading = 1;
    }
    if (!last_complete) {
        end = add_days(end, -1);
        dropped_trailing = 1;
    }
    const long span = days_between(start, end);
    if (span < 0) {
        throw Error(ErrorCode::MalformedRow, grid.label + ": no complete day of data", rows.back().line);
    }
    const auto n_days = static_cast<std::size_t>(span + 1);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> values(n_days * slots, nan);
    std::vector<std::size_t> counts(n_days * slots, 0);

    for (const Row& row : rows) {
        const long offset = days_between(start, row.stamp.date);
        if (offset < 0 || offset >= static_cast<long>(n_days)) {
            continue;  // partial boundary day
        }
        const std::size_t slot = slot_of(row);
        const std::size_t idx = static_cast<std::size_t>(offset) * slots + slot;
        const std::size_t seen = counts[idx]++;
        if (seen == 0) {
            values[idx] = row.price;
            continue;
        }
        if (seen == 1 && is_fall_back(row.stamp.date, rule) && is_dst_slot(slot)) {
            values[idx] = 0.5 * (values[idx] + row.price);
            if (report) {
                report->dst_events.push_back(grid.label + " " + format_timestamp(row.stamp.date, row.stamp.minute_of_day) +
                                             ": duplicated fall-back interval averaged");
            }
            continue;
        }
        throw Error(ErrorCode::MalformedRow,
                    grid.label + ": duplicate timestamp " + format_timestamp(row.stamp.date, row.stamp.minute_of_day),
                    row.line);
    }

    // Walk runs of missing slots; first and last slot of the range are present.
    std::size_t i = 0;
    while (i < values.size()) {
        if (counts[i] != 0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        std::size_t non_dst = 0;
        std::size_t first_non_dst = values.size();
        while (j < values.size() && counts[j] == 0) {
            const Date day = add_days(start, static_cast<long>(j / slots));
            if (!(is_spring_forward(day, rule) && is_dst_slot(j % slots))) {
                if (non_dst++ == 0) {
                    first_non_dst = j;
                }
            }
            ++j;
        }
        if (non_dst > options.max_gap_fill || i == 0 || j == values.size()) {
            const Date day = add_days(start, static_cast<long>(first_non_dst / slots));
            const int minute = static_cast<int>(first_non_dst % slots) * grid.step_minutes;
            throw Error(ErrorCode::GapError, grid.label + ": missing timestamp " + format_timestamp(day, minute) +
                                                 " (" + std::to_string(non_dst) + " consecutive intervals)");
        }
        const double left = values[i - 1];
        const double right = values[j];
        const double width = static_cast<double>(j - i + 1);
        for (std::size_t k = i; k < j; ++k) {
            values[k] = left + (right - left) * static_cast<double>(k - i + 1) / width;
        }
        if (report) {
            const Date day = add_days(start, static_cast<long>(i / slots));
            const int minute = static_cast<int>(i % slots) * grid.step_minutes;
            const std::string what = grid.label + " " + format_timestamp(day, minute) + ": " +
                                     std::to_string(j - i) + " interval(s) linearly interpolated";
            if (non_dst == 0) {
                report->dst_events.push_back(what + " (spring-forward)");
            } else {
                report->warnings.push_back(what);
            }
        }
        i = j;
    }

    if (report) {
        report->dropped_leading_days = std::max(report->dropped_leading_days, dropped_leading);
        report->dropped_trailing_days = std::max(report->dropped_trailing_days, dropped_trailing);
    }
    return {start, n_days, std::move(values)};
}

}  // namespace

void validate(const PriceSeries& series) {
    if (series.n_days == 0) {
        throw Error(ErrorCode::EmptyInput, "price series holds no days");
    }
    if (series.da.size() != kHoursPerDay * series.n_days || series.id.size() != kQuartersPerDay * series.n_days) {
        throw Error(ErrorCode::DimensionMismatch, "price series lengths do not match n_days");
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(series.da.begin(), series.da.end(), finite) ||
        !std::all_of(series.id.begin(), series.id.end(), finite)) {
        throw Error(ErrorCode::MalformedRow, "price series holds non-finite values");
    }
}

Manifest parse_manifest(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("manifest is not valid JSON: ") + e.what());
    }
    Manifest manifest;
    try {
        manifest.market = doc.at("market").get<std::string>();
        manifest.year = doc.at("year").get<int>();
        if (doc.contains("timezone")) {
            manifest.timezone = doc.at("timezone").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("manifest: ") + e.what());
    }
    if (manifest.market != "DA" && manifest.market != "ID3") {
        throw Error(ErrorCode::BadConfig, "manifest market must be \"DA\" or \"ID3\"");
    }
    return manifest;
}

PriceSeries parse_price_csv(std::istream& da_source, std::istream& id_source, const IngestOptions& options,
                            CalendarReport* report) {
    const DstRule rule = dst_rule_for_timezone(options.timezone);
    if (report) {
        report->timezone = options.timezone;
        report->dst_policy = rule == DstRule::None
                                 ? "none (timezone without daylight saving)"
                                 : "spring-forward hour linearly interpolated; fall-back duplicate hour averaged";
    }
    const MarketGrid da_grid{"DA", kHoursPerDay, 60};
    const MarketGrid id_grid{"ID", kQuartersPerDay, 15};
    AssembledMarket da = assemble(read_rows(da_source, da_grid), da_grid, rule, options, report);
    AssembledMarket id = assemble(read_rows(id_source, id_grid), id_grid, rule, options, report);
    if (da.start != id.start || da.n_days != id.n_days) {
        throw Error(ErrorCode::MisalignedSeries,
                    "DA covers " + format_date(da.start) + " + " + std::to_string(da.n_days) + " days, ID covers " +
                        format_date(id.start) + " + " + std::to_string(id.n_days) + " days");
    }
    PriceSeries series{da.start, std::move(da.values), std::move(id.values), da.n_days};
    validate(series);
    return series;
}

void write_price_csv(const PriceSeries& series, std::ostream& da_out, std::ostream& id_out) {
    char buf[64];
    da_out << kHeader << '\n';
    id_out << kHeader << '\n';
    for (std::size_t d = 0; d < series.n_days; ++d) {
        const Date date = add_days(series.start_date, static_cast<long>(d));
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            std::snprintf(buf, sizeof buf, "%.2f", series.da[d * kHoursPerDay + h]);
            da_out << format_timestamp(date, static_cast<int>(h) * 60) << ',' << buf << '\n';
        }
        for (std::size_t q = 0; q < kQuartersPerDay; ++q) {
            std::snprintf(buf, sizeof buf, "%.2f", series.id[d * kQuartersPerDay + q]);
            id_out << format_timestamp(date, static_cast<int>(q) * 15) << ',' << buf << '\n';
        }
    }
}

std::vector<DayRecord> slice_days(const PriceSeries& series) {
    std::vector<DayRecord> days;
    days.reserve(series.n_days);
    for (std::size_t d = 0; d < series.n_days; ++d) {
        DayRecord rec;
        rec.day_index = d + 1;
        rec.date = add_days(series.start_date, static_cast<long>(d));
        rec.weekday = weekday_index(rec.date);
        rec.da.assign(series.da.begin() + static_cast<std::ptrdiff_t>(d * kHoursPerDay),
                      series.da.begin() + static_cast<std::ptrdiff_t>((d + 1) * kHoursPerDay));
        rec.id.assign(series.id.begin() + static_cast<std::ptrdiff_t>(d * kQuartersPerDay),
                      series.id.begin() + static_cast<std::ptrdiff_t>((d + 1) * kQuartersPerDay));
        days.push_back(std::move(rec));
    }
    return days;
}

std::vector<WeekRecord> slice_weeks(const PriceSeries& series) {
    const auto lead = static_cast<std::size_t>((7 - weekday_index(series.start_date)) % 7);
    const std::size_t n_weeks = series.n_days > lead ? (series.n_days - lead) / kDaysPerWeek : 0;
    if (n_weeks == 0) {
        throw Error(ErrorCode::NoFullWeek, "series of " + std::to_string(series.n_days) + " days starting " +
                                               format_date(series.start_date) + " holds no Monday-Sunday week");
    }
    std::vector<DayRecord> days = slice_days(series);
    std::vector<WeekRecord> weeks(n_weeks);
    for (std::size_t w = 0; w < n_weeks; ++w) {
        weeks[w].week_index = w + 1;
        for (std::size_t d = 0; d < kDaysPerWeek; ++d) {
            weeks[w].days.push_back(std::move(days[lead + w * kDaysPerWeek + d]));
        }
    }
    return weeks;
}

std::vector<DayRecord> filter_days(std::span<const DayRecord> days,
                                   const std::function<bool(const DayRecord&)>& keep) {
    std::vector<DayRecord> out;
    for (const DayRecord& day : days) {
        if (keep(day)) {
            out.push_back(day);
        }
    }
    return out;
}

}  // namespace priceforge
