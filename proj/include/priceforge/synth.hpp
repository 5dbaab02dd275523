#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "priceforge/ingest.hpp"

namespace priceforge::synth {

/// Parameters of a deterministic synthetic price year. All amplitudes in
/// EUR/MWh, hours as fractional hour of day. Noise comes from additive
/// low-discrepancy (Weyl) sequences, so no seed exists.
struct YearSpec {
    Date start_date = Date{std::chrono::year{2023}, std::chrono::January, std::chrono::day{1}};
    std::size_t n_days = 365;

    double base_level = 95.0;
    double seasonal_amplitude = 12.0;  // cosine over the year, peak in January
    double level_jitter = 10.0;        // per-day level shift bound

    // Double-peak day shape: two Gaussian bumps and a midday dip.
    double morning_peak = 28.0;
    double morning_hour = 8.0;
    double evening_peak = 42.0;
    double evening_hour = 19.0;
    double midday_dip = 22.0;
    double midday_hour = 13.5;
    double peak_width = 2.0;

    double shape_spread = 0.45;   // per-day shape factor in [1 - s, 1 + s]
    double weekend_factor = 0.8;  // Saturday/Sunday level and shape multiplier
    double noise_amplitude = 14.0; // hourly DA noise bound

    // ID = DA + intra-hour harmonics (0.5 and 1 per hour) + noise + offset.
    double id_half_hour_amp = 9.0;
    double id_hour_amp = 6.0;
    double id_noise_amplitude = 10.0;
    double id_offset = 2.2;

    std::string timezone = "UTC";
};

/// The documented test fixture: the defaults above (365 days from 2023-01-01).
YearSpec synth2023();

/// Throws BadSpec for non-finite, negative or inconsistent parameters.
void validate(const YearSpec& spec);

/// JSON object with the field names above (start_date as YYYY-MM-DD);
/// absent keys keep their defaults.
YearSpec parse_year_spec(std::istream& is);

/// The series in memory. Prices are rounded to cents, so writing and
/// re-reading the CSVs reproduces it exactly.
PriceSeries generate(const YearSpec& spec);

/// Writes da.csv, id.csv and their manifests da.json / id.json into `dir`.
void gen_synthetic(const YearSpec& spec, const std::filesystem::path& dir);

}  // namespace priceforge::synth
