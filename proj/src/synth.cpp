#include "priceforge/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "priceforge/error.hpp"

namespace priceforge::synth {

namespace {

// Fractional parts of n * alpha for distinct irrational alphas fill [0, 1)
// evenly without any random state.
double weyl(std::size_t n, double alpha) {
    const double v = static_cast<double>(n) * alpha;
    return v - std::floor(v);
}

double centered(std::size_t n, double alpha) { return 2.0 * weyl(n, alpha) - 1.0; }

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;
const double kSqrt2 = std::sqrt(2.0) - 1.0;
const double kSqrt3 = std::sqrt(3.0) - 1.0;
const double kSqrt5 = std::sqrt(5.0) - 2.0;
const double kSqrt7 = std::sqrt(7.0) - 2.0;

double bump(double hour, double centre, double width) {
    const double z = (hour - centre) / width;
    return std::exp(-0.5 * z * z);
}

double cents(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

YearSpec synth2023() { return YearSpec{}; }

void validate(const YearSpec& s) {
    const auto fail = [](const std::string& what) { throw Error(ErrorCode::BadSpec, what); };
    if (!s.start_date.ok()) {
        fail("start_date is not a valid date");
    }
    if (s.n_days == 0) {
        fail("n_days must be at least 1");
    }
    const std::pair<const char*, double> amplitudes[] = {
        {"base_level", s.base_level},         {"seasonal_amplitude", s.seasonal_amplitude},
        {"level_jitter", s.level_jitter},     {"morning_peak", s.morning_peak},
        {"evening_peak", s.evening_peak},     {"midday_dip", s.midday_dip},
        {"noise_amplitude", s.noise_amplitude}, {"id_half_hour_amp", s.id_half_hour_amp},
        {"id_hour_amp", s.id_hour_amp},       {"id_noise_amplitude", s.id_noise_amplitude},
    };
    for (const auto& [name, value] : amplitudes) {
        if (!std::isfinite(value) || (value < 0.0 && std::string_view(name) != "base_level")) {
            fail(std::string(name) + " must be finite and non-negative");
        }
    }
    for (double hour : {s.morning_hour, s.evening_hour, s.midday_hour}) {
        if (!(hour >= 0.0 && hour <= 24.0)) {
            fail("peak hours must lie in [0, 24]");
        }
    }
    if (!(s.peak_width > 0.0) || !std::isfinite(s.peak_width)) {
        fail("peak_width must be positive");
    }
    if (!(s.shape_spread >= 0.0 && s.shape_spread < 1.0)) {
        fail("shape_spread must lie in [0, 1)");
    }
    if (!(s.weekend_factor > 0.0) || !std::isfinite(s.weekend_factor)) {
        fail("weekend_factor must be positive");
    }
    if (!std::isfinite(s.id_offset)) {
        fail("id_offset must be finite");
    }
    if (s.timezone.empty()) {
        fail("timezone must not be empty");
    }
}

YearSpec parse_year_spec(std::istream& is) {
    YearSpec s;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadSpec, std::string("year spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::BadSpec, "year spec must be a JSON object");
    }
    const std::pair<const char*, double*> numbers[] = {
        {"base_level", &s.base_level},
        {"seasonal_amplitude", &s.seasonal_amplitude},
        {"level_jitter", &s.level_jitter},
        {"morning_peak", &s.morning_peak},
        {"morning_hour", &s.morning_hour},
        {"evening_peak", &s.evening_peak},
        {"evening_hour", &s.evening_hour},
        {"midday_dip", &s.midday_dip},
        {"midday_hour", &s.midday_hour},
        {"peak_width", &s.peak_width},
        {"shape_spread", &s.shape_spread},
        {"weekend_factor", &s.weekend_factor},
        {"noise_amplitude", &s.noise_amplitude},
        {"id_half_hour_amp", &s.id_half_hour_amp},
        {"id_hour_amp", &s.id_hour_amp},
        {"id_noise_amplitude", &s.id_noise_amplitude},
        {"id_offset", &s.id_offset},
    };
    for (const auto& [key, value] : doc.items()) {
        if (key == "start_date") {
            const auto date = value.is_string() ? parse_date(value.get<std::string>()) : std::nullopt;
            if (!date) {
                throw Error(ErrorCode::BadSpec, "start_date must be a YYYY-MM-DD string");
            }
            s.start_date = *date;
        } else if (key == "n_days") {
            if (!value.is_number_integer() || value.get<long long>() < 1) {
                throw Error(ErrorCode::BadSpec, "n_days must be a positive integer");
            }
            s.n_days = value.get<std::size_t>();
        } else if (key == "timezone") {
            if (!value.is_string()) {
                throw Error(ErrorCode::BadSpec, "timezone must be a string");
            }
            s.timezone = value.get<std::string>();
        } else {
            const auto* field = std::find_if(std::begin(numbers), std::end(numbers),
                                             [&](const auto& f) { return key == f.first; });
            if (field == std::end(numbers)) {
                throw Error(ErrorCode::BadSpec, "unknown year spec key '" + key + "'");
            }
            if (!value.is_number()) {
                throw Error(ErrorCode::BadSpec, "year spec key '" + key + "' must be a number");
            }
            *field->second = value.get<double>();
        }
    }
    validate(s);
    return s;
}

PriceSeries generate(const YearSpec& s) {
    validate(s);
    PriceSeries out;
    out.start_date = s.start_date;
    out.n_days = s.n_days;
    out.da.reserve(s.n_days * kHoursPerDay);
    out.id.reserve(s.n_days * kQuartersPerDay);
    const unsigned year_days = std::chrono::year{s.start_date.year()}.is_leap() ? 366 : 365;
    const std::chrono::sys_days jan1{s.start_date.year() / std::chrono::January / 1};

    for (std::size_t i = 0; i < s.n_days; ++i) {
        const Date date = add_days(s.start_date, static_cast<long>(i));
        const bool weekend = weekday_index(date) >= 5;
        const double week = weekend ? s.weekend_factor : 1.0;
        const double doy = static_cast<double>((std::chrono::sys_days{date} - jan1).count());
        const double season = s.seasonal_amplitude * std::cos(2.0 * std::numbers::pi * doy / year_days);
        const double level = (s.base_level + season + s.level_jitter * centered(i + 1, kSqrt3)) * week;
        const double shape_factor = (1.0 + s.shape_spread * centered(i + 1, kSqrt2)) * week;

        std::vector<double> raw_da(kHoursPerDay);
        for (std::size_t k = 0; k < kHoursPerDay; ++k) {
            const double h = static_cast<double>(k) + 0.5;
            const double shape = s.morning_peak * bump(h, s.morning_hour, s.peak_width) +
                                 s.evening_peak * bump(h, s.evening_hour, s.peak_width) -
                                 s.midday_dip * bump(h, s.midday_hour, 1.25 * s.peak_width);
            const std::size_t n = i * kHoursPerDay + k + 1;
            raw_da[k] = cents(level + shape_factor * shape + s.noise_amplitude * centered(n, kGolden));
            out.da.push_back(raw_da[k]);
        }
        const double id_factor = 1.0 + s.shape_spread * centered(i + 1, kSqrt7);
        for (std::size_t q = 0; q < kQuartersPerDay; ++q) {
            const double tau = static_cast<double>(q) * 0.25;
            const double harmonics = s.id_half_hour_amp * std::sin(std::numbers::pi * tau + 0.3) +
                                     s.id_hour_amp * std::sin(2.0 * std::numbers::pi * tau + 0.7);
            const std::size_t n = i * kQuartersPerDay + q + 1;
            const double dev = id_factor * harmonics + s.id_noise_amplitude * centered(n, kSqrt5) + s.id_offset;
            out.id.push_back(cents(raw_da[q / kQuartersPerHour] + dev));
        }
    }
    return out;
}

void gen_synthetic(const YearSpec& spec, const std::filesystem::path& dir) {
    const PriceSeries series = generate(spec);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream da(dir / "da.csv", std::ios::binary);
    std::ofstream id(dir / "id.csv", std::ios::binary);
    if (!da || !id) {
        throw Error(ErrorCode::Io, "cannot write price files into " + dir.string());
    }
    write_price_csv(series, da, id);
    const int year = static_cast<int>(spec.start_date.year());
    for (const auto& [name, market] : {std::pair{"da.json", "DA"}, std::pair{"id.json", "ID3"}}) {
        nlohmann::ordered_json manifest;
        manifest["market"] = market;
        manifest["year"] = year;
        manifest["timezone"] = spec.timezone;
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) {
            throw Error(ErrorCode::Io, "cannot write manifest into " + dir.string());
        }
        os << manifest.dump(2) << '\n';
    }
}

}  // namespace priceforge::synth
