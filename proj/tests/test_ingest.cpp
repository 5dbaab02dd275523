#include <doctest.h>

#include <functional>
#include <sstream>

#include "priceforge/calendar.hpp"
#include "priceforge/error.hpp"
#include "priceforge/ingest.hpp"
#include "support.hpp"

using namespace priceforge;

namespace {

Date ymd(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

// rows for n_days from start; skip(date, minute) drops a row, dup repeats it
std::string market_csv(Date start, std::size_t n_days, int step, const std::function<double(long, int)>& price,
                       const std::function<bool(const Date&, int)>& skip = {},
                       const std::function<bool(const Date&, int)>& dup = {}) {
    std::ostringstream os;
    os << "timestamp,price_eur_mwh\n";
    for (std::size_t d = 0; d < n_days; ++d) {
        const Date date = add_days(start, static_cast<long>(d));
        for (int m = 0; m < 1440; m += step) {
            if (skip && skip(date, m)) continue;
            const int reps = (dup && dup(date, m)) ? 2 : 1;
            for (int r = 0; r < reps; ++r) {
                os << format_timestamp(date, m) << ',' << price(static_cast<long>(d), m + r) << '\n';
            }
        }
    }
    return os.str();
}

double simple_price(long d, int minute) {
    return 50.0 + static_cast<double>(d) + 0.01 * static_cast<double>(minute);
}

PriceSeries parse(const std::string& da, const std::string& id, IngestOptions opt = {},
                  CalendarReport* report = nullptr) {
    std::istringstream a(da), b(id);
    return parse_price_csv(a, b, opt, report);
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("well-formed year has the expected lengths") {
    const Date start = ymd(2023, 1, 1);
    const auto series = parse(market_csv(start, 365, 60, simple_price), market_csv(start, 365, 15, simple_price),
                              IngestOptions{"UTC", 2});
    CHECK(series.n_days == 365);
    CHECK(series.da.size() == 8760);
    CHECK(series.id.size() == 35040);
}

TEST_CASE("spring-forward gap is interpolated and reported") {
    const Date start = ymd(2023, 3, 26);
    const auto spring = [](const Date& d, int m) { return d == ymd(2023, 3, 26) && m / 60 == 2; };
    CalendarReport report;
    const auto series = parse(market_csv(start, 2, 60, simple_price, spring),
                              market_csv(start, 2, 15, simple_price, spring), IngestOptions{}, &report);
    REQUIRE(series.n_days == 2);
    // linear between 01:00 and 03:00
    CHECK(series.da[2] == doctest::Approx(0.5 * (series.da[1] + series.da[3])));
    CHECK(series.id[8] == doctest::Approx(series.id[7] + 0.2 * (series.id[12] - series.id[7])));
    CHECK_FALSE(report.dst_events.empty());
    CHECK(report.warnings.empty());

    // strict mode still accepts the DST hour
    IngestOptions strict;
    strict.max_gap_fill = 0;
    CHECK(parse(market_csv(start, 2, 60, simple_price, spring), market_csv(start, 2, 15, simple_price, spring),
                strict)
              .n_days == 2);
}

TEST_CASE("fall-back duplicate hour is averaged") {
    const Date start = ymd(2023, 10, 29);
    const auto fall = [](const Date& d, int m) { return d == ymd(2023, 10, 29) && m / 60 == 2; };
    const auto series = parse(market_csv(start, 1, 60, simple_price, {}, fall),
                              market_csv(start, 1, 15, simple_price, {}, fall));
    CHECK(series.da[2] == doctest::Approx(0.5 * (simple_price(0, 120) + simple_price(0, 121))));
}

TEST_CASE("duplicate outside the fall-back hour is malformed") {
    const Date start = ymd(2023, 6, 1);
    const auto dup = [](const Date&, int m) { return m == 600; };
    CHECK(code_of([&] {
              parse(market_csv(start, 1, 60, simple_price, {}, dup), market_csv(start, 1, 15, simple_price));
          }) == ErrorCode::MalformedRow);
}

TEST_CASE("missing mid-June quarter names the timestamp in strict mode") {
    const Date start = ymd(2023, 6, 14);
    const auto hole = [](const Date& d, int m) { return d == ymd(2023, 6, 15) && m == 13 * 60 + 45; };
    IngestOptions strict;
    strict.max_gap_fill = 0;
    try {
        parse(market_csv(start, 3, 60, simple_price), market_csv(start, 3, 15, simple_price, hole), strict);
        FAIL("expected GapError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GapError);
        CHECK(std::string(e.what()).find("2023-06-15T13:45") != std::string::npos);
    }
}

TEST_CASE("short gaps fill with a warning, long ones fail") {
    const Date start = ymd(2023, 6, 14);
    const auto two = [](const Date& d, int m) { return d == ymd(2023, 6, 15) && (m == 600 || m == 615); };
    const auto three = [](const Date& d, int m) { return d == ymd(2023, 6, 15) && m >= 600 && m <= 630; };
    CalendarReport report;
    const auto series = parse(market_csv(start, 3, 60, simple_price), market_csv(start, 3, 15, simple_price, two),
                              IngestOptions{}, &report);
    CHECK(series.id[96 + 40] == doctest::Approx(simple_price(1, 600)));
    CHECK(report.warnings.size() == 1);
    CHECK(code_of([&] {
              parse(market_csv(start, 3, 60, simple_price), market_csv(start, 3, 15, simple_price, three));
          }) == ErrorCode::GapError);
}

TEST_CASE("malformed rows carry the line number") {
    const std::string id = market_csv(ymd(2023, 6, 1), 1, 15, simple_price);
    try {
        parse("timestamp,price_eur_mwh\n2023-06-01T00:00,1.0\n2023-06-01T01:00,abc\n", id);
        FAIL("expected MalformedRow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedRow);
        CHECK(e.line() == 3);
    }
    CHECK(code_of([&] { parse("time,price\n", id); }) == ErrorCode::MalformedRow);
    CHECK(code_of([&] { parse("timestamp,price_eur_mwh\n2023-06-01T00:30,1\n", id); }) == ErrorCode::MalformedRow);
}

TEST_CASE("DA and ID covering different days are misaligned") {
    CHECK(code_of([&] {
              parse(market_csv(ymd(2023, 6, 1), 2, 60, simple_price), market_csv(ymd(2023, 6, 1), 3, 15, simple_price),
                    IngestOptions{"UTC", 2});
          }) == ErrorCode::MisalignedSeries);
}

TEST_CASE("partial boundary days are dropped") {
    const auto partial = [](const Date& d, int m) { return d == ymd(2023, 6, 1) && m < 300; };
    CalendarReport report;
    const auto series = parse(market_csv(ymd(2023, 6, 1), 3, 60, simple_price, partial),
                              market_csv(ymd(2023, 6, 1), 3, 15, simple_price, partial), IngestOptions{"UTC", 2},
                              &report);
    CHECK(series.n_days == 2);
    CHECK(series.start_date == ymd(2023, 6, 2));
    CHECK(report.dropped_leading_days == 1);
}

TEST_CASE("CSV round trip is exact") {
    const auto series = pftest::small_year(20);
    std::ostringstream da, id;
    write_price_csv(series, da, id);
    CHECK(parse(da.str(), id.str(), IngestOptions{"UTC", 2}) == series);
}

TEST_CASE("slice_days partitions the series") {
    const auto series = pftest::small_year(9);
    const auto days = slice_days(series);
    REQUIRE(days.size() == 9);
    std::vector<double> da, id;
    for (const auto& d : days) {
        da.insert(da.end(), d.da.begin(), d.da.end());
        id.insert(id.end(), d.id.begin(), d.id.end());
    }
    CHECK(da == series.da);
    CHECK(id == series.id);
    CHECK(days[0].weekday == 6);  // 2023-01-01 is a Sunday
    CHECK(days[1].weekday == 0);
    CHECK(days[0].day_index == 1);
}

TEST_CASE("weekday calendar oracle") {
    // Zeller-free check: 1970-01-01 was a Thursday
    CHECK(weekday_index(ymd(1970, 1, 1)) == 3);
    CHECK(weekday_index(ymd(2023, 1, 1)) == 6);
    CHECK(weekday_index(ymd(2023, 1, 2)) == 0);
    CHECK(weekday_index(ymd(2024, 2, 29)) == 3);
}

TEST_CASE("EU daylight saving dates") {
    const auto rule = dst_rule_for_timezone("Europe/Berlin");
    CHECK(is_spring_forward(ymd(2023, 3, 26), rule));
    CHECK(is_fall_back(ymd(2023, 10, 29), rule));
    CHECK_FALSE(is_spring_forward(ymd(2023, 3, 19), rule));
    CHECK_FALSE(is_spring_forward(ymd(2023, 3, 26), dst_rule_for_timezone("UTC")));
}

TEST_CASE("week slicing") {
    const auto year = pftest::small_year(365);
    const auto weeks = slice_weeks(year);
    CHECK(weeks.size() == 52);
    CHECK(weeks[0].days[0].date == ymd(2023, 1, 2));
    for (const auto& w : weeks) {
        REQUIRE(w.days.size() == 7);
        CHECK(w.days[0].weekday == 0);
        for (std::size_t d = 1; d < 7; ++d) {
            CHECK(w.days[d].day_index == w.days[0].day_index + d);
        }
    }
    CHECK(slice_weeks(pftest::small_year(7, 1)).size() == 1);
    CHECK(code_of([] { slice_weeks(pftest::small_year(6, 1)); }) == ErrorCode::NoFullWeek);
}

TEST_CASE("manifest parsing") {
    std::istringstream good(R"({"market":"DA","year":2023,"timezone":"UTC"})");
    const auto m = parse_manifest(good);
    CHECK(m.market == "DA");
    CHECK(m.timezone == "UTC");
    std::istringstream bad(R"({"market":"XX","year":2023})");
    CHECK(code_of([&] { parse_manifest(bad); }) == ErrorCode::BadConfig);
}
