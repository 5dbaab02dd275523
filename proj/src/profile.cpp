#include "priceforge/profile.hpp"

#include <algorithm>
#include <cmath>

#include "priceforge/error.hpp"

namespace priceforge::profile {

namespace {

double mean_of(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double rms_combination(std::span<const double> a, std::span<const double> d, double gamma) {
    double ss = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) {
        const double v = a[q] + gamma * d[q];
        ss += v * v;
    }
    return std::sqrt(ss / static_cast<double>(a.size()));
}

double averaged_std(std::span<const double> average) {
    const double sd = stats::population_std(average);
    double scale = 1.0;
    for (double v : average) {
        scale = std::max(scale, std::abs(v));
    }
    if (sd <= 1e-12 * scale) {
        throw Error(ErrorCode::DegenerateAverage, "averaged DA profile is flat; beta is undefined");
    }
    return sd;
}

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::NonpositiveBeta, std::string(what) + " must be a positive finite number");
    }
}

void check_day_shape(const DayRecord& day, std::size_t hours) {
    if (day.da.size() != hours || day.id.size() != kQuartersPerHour * hours) {
        throw Error(ErrorCode::DimensionMismatch, "day records differ in horizon length");
    }
}

}  // namespace

std::string_view to_string(ScalingMode mode) {
    switch (mode) {
        case ScalingMode::Unscaled: return "unscaled";
        case ScalingMode::Nominal: return "nominal";
        case ScalingMode::Extreme: return "extreme";
        case ScalingMode::Manual: return "manual";
    }
    return "unknown";
}

std::optional<ScalingMode> parse_scaling_mode(std::string_view text) {
    for (ScalingMode m : {ScalingMode::Unscaled, ScalingMode::Nominal, ScalingMode::Extreme, ScalingMode::Manual}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

HistoricalBlocks blocks_from_days(std::span<const DayRecord> days) {
    if (days.empty()) {
        throw Error(ErrorCode::EmptyInput, "no days supplied");
    }
    const std::size_t hours = days.front().da.size();
    if (hours == 0) {
        throw Error(ErrorCode::EmptyInput, "day records hold no prices");
    }
    HistoricalBlocks blocks{kernels::RowMatrix(days.size(), hours),
                            kernels::RowMatrix(days.size(), kQuartersPerHour * hours), kQuartersPerHour * hours};
    for (std::size_t r = 0; r < days.size(); ++r) {
        check_day_shape(days[r], hours);
        std::copy(days[r].da.begin(), days[r].da.end(), blocks.da.row(r).begin());
        std::copy(days[r].id.begin(), days[r].id.end(), blocks.id.row(r).begin());
    }
    return blocks;
}

HistoricalBlocks blocks_from_weeks(std::span<const WeekRecord> weeks) {
    if (weeks.empty()) {
        throw Error(ErrorCode::EmptyInput, "no weeks supplied");
    }
    if (weeks.front().days.size() != kDaysPerWeek) {
        throw Error(ErrorCode::DimensionMismatch, "week record without seven days");
    }
    const std::size_t hours = weeks.front().days.front().da.size();
    if (hours == 0) {
        throw Error(ErrorCode::EmptyInput, "day records hold no prices");
    }
    HistoricalBlocks blocks{kernels::RowMatrix(weeks.size(), kDaysPerWeek * hours),
                            kernels::RowMatrix(weeks.size(), kDaysPerWeek * kQuartersPerHour * hours),
                            kQuartersPerHour * hours};
    for (std::size_t w = 0; w < weeks.size(); ++w) {
        if (weeks[w].days.size() != kDaysPerWeek) {
            throw Error(ErrorCode::DimensionMismatch, "week record without seven days");
        }
        auto da_row = blocks.da.row(w);
        auto id_row = blocks.id.row(w);
        for (std::size_t d = 0; d < kDaysPerWeek; ++d) {
            const DayRecord& day = weeks[w].days[d];
            check_day_shape(day, hours);
            std::copy(day.da.begin(), day.da.end(), da_row.begin() + static_cast<std::ptrdiff_t>(d * hours));
            std::copy(day.id.begin(), day.id.end(),
                      id_row.begin() + static_cast<std::ptrdiff_t>(d * kQuartersPerHour * hours));
        }
    }
    return blocks;
}

std::vector<double> scale_profile(std::span<const double> profile, double beta) {
    require_positive(beta, "beta");
    if (profile.empty()) {
        throw Error(ErrorCode::EmptyInput, "empty profile");
    }
    const double mean = mean_of(profile);
    std::vector<double> out(profile.size());
    for (std::size_t k = 0; k < profile.size(); ++k) {
        out[k] = mean + beta * (profile[k] - mean);
    }
    return out;
}

std::vector<double> zero_mean_correct(std::span<const double> deviation) {
    if (deviation.empty()) {
        return {};
    }
    const double mean = mean_of(deviation);
    std::vector<double> out(deviation.size());
    for (std::size_t q = 0; q < deviation.size(); ++q) {
        out[q] = deviation[q] - mean;
    }
    return out;
}

std::vector<double> zero_mean_correct_segments(std::span<const double> deviation, std::size_t segment) {
    if (segment == 0 || deviation.size() % segment != 0) {
        throw Error(ErrorCode::DimensionMismatch, "deviation length is not a multiple of the closure segment");
    }
    std::vector<double> out;
    out.reserve(deviation.size());
    for (std::size_t start = 0; start < deviation.size(); start += segment) {
        auto part = zero_mean_correct(deviation.subspan(start, segment));
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

double gamma_for_target_std(std::span<const double> da_scaled_dev, std::span<const double> corrected_dev,
                            double target_std) {
    if (da_scaled_dev.size() != corrected_dev.size() || corrected_dev.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "gamma equation inputs differ in length");
    }
    double sad = 0.0;
    double sdd = 0.0;
    for (std::size_t q = 0; q < corrected_dev.size(); ++q) {
        sad += da_scaled_dev[q] * corrected_dev[q];
        sdd += corrected_dev[q] * corrected_dev[q];
    }
    const double dev_rms = std::sqrt(sdd / static_cast<double>(corrected_dev.size()));
    if (!(dev_rms > 1e-12 * std::max(1.0, std::abs(target_std)))) {
        throw Error(ErrorCode::ZeroDeviation, "corrected ID-DA deviation is identically zero");
    }
    // The left side is convex in gamma with its minimum at -sad/sdd.
    const double lo_start = std::max(0.0, -sad / sdd);
    const double floor_value = rms_combination(da_scaled_dev, corrected_dev, lo_start);
    if (floor_value > target_std || (lo_start == 0.0 && floor_value >= target_std)) {
        throw Error(ErrorCode::UnreachableTarget, "target ID std " + std::to_string(target_std) +
                                                      " is below the smallest std reachable with gamma > 0 (" +
                                                      std::to_string(floor_value) + ")");
    }
    if (floor_value == target_std) {
        return lo_start;
    }
    double lo = lo_start;
    double hi = std::max(1.0, 2.0 * lo_start);
    for (int i = 0; rms_combination(da_scaled_dev, corrected_dev, hi) < target_std; ++i) {
        if (i > 2000) {
            throw Error(ErrorCode::UnreachableTarget, "gamma bracket did not close");
        }
        hi *= 2.0;
    }
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (rms_combination(da_scaled_dev, corrected_dev, mid) < target_std) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double r_lo = std::abs(rms_combination(da_scaled_dev, corrected_dev, lo) - target_std);
    const double r_hi = std::abs(rms_combination(da_scaled_dev, corrected_dev, hi) - target_std);
    return (lo > 0.0 && r_lo < r_hi) ? lo : hi;
}

std::vector<double> expand_to_quarters(std::span<const double> hourly) {
    std::vector<double> out(hourly.size() * kQuartersPerHour);
    for (std::size_t q = 0; q < out.size(); ++q) {
        out[q] = hourly[q / kQuartersPerHour];
    }
    return out;
}

std::pair<stats::StatsSummary, stats::StatsSummary> profile_stats(const ScenarioProfile& profile) {
    return {stats::summarize(profile.da, 1.0), stats::summarize(profile.id, 1.0 / kQuartersPerHour)};
}

ScenarioProfile repeat_profile(const ScenarioProfile& profile, std::size_t times) {
    ScenarioProfile out;
    out.scaling = profile.scaling;
    out.da_mean = profile.da_mean;
    for (std::size_t t = 0; t < times; ++t) {
        out.da.insert(out.da.end(), profile.da.begin(), profile.da.end());
        out.id.insert(out.id.end(), profile.id.begin(), profile.id.end());
        out.deviation.insert(out.deviation.end(), profile.deviation.begin(), profile.deviation.end());
    }
    return out;
}

namespace detail {

double average_std_ratio(const HistoricalBlocks& blocks, std::span<const double> average) {
    const double denom = averaged_std(average);
    const std::vector<double> stds = kernels::parallel::row_stds(blocks.da);
    return mean_of(stds) / denom;
}

double percentile_std_ratio(const HistoricalBlocks& blocks, std::span<const double> average, double tail) {
    const double denom = averaged_std(average);
    const std::vector<double> stds = kernels::parallel::row_stds(blocks.da);
    return stats::percentile(stds, tail) / denom;
}

double resolve_gamma(const HistoricalBlocks& blocks, std::span<const double> da_scaled,
                     std::span<const double> corrected, const ScalingSpec& spec) {
    switch (spec.mode) {
        case ScalingMode::Unscaled: return 1.0;
        case ScalingMode::Manual: require_positive(spec.gamma, "gamma"); return spec.gamma;
        case ScalingMode::Nominal:
        case ScalingMode::Extreme: break;
    }
    const std::vector<double> id_stds = kernels::parallel::row_stds(blocks.id);
    const double target =
        spec.mode == ScalingMode::Nominal ? mean_of(id_stds) : stats::percentile(id_stds, spec.tail_fraction);
    const double da_mean = mean_of(da_scaled);
    std::vector<double> a(corrected.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
        a[q] = da_scaled[q / kQuartersPerHour] - da_mean;
    }
    return gamma_for_target_std(a, corrected, target);
}

ScenarioProfile build(const HistoricalBlocks& blocks, const ScalingSpec& spec, std::size_t min_rows_scaled) {
    const bool scaled = spec.mode == ScalingMode::Nominal || spec.mode == ScalingMode::Extreme;
    if (blocks.da.rows == 0) {
        throw Error(ErrorCode::EmptyInput, "no historical records");
    }
    if (scaled && blocks.da.rows < min_rows_scaled) {
        throw Error(ErrorCode::EmptyInput, std::string(to_string(spec.mode)) + " scaling needs at least " +
                                               std::to_string(min_rows_scaled) + " historical records");
    }
    if (spec.mode == ScalingMode::Extreme && !(spec.tail_fraction > 0.0 && spec.tail_fraction < 1.0)) {
        throw Error(ErrorCode::BadFraction, "tail fraction must lie in (0, 1)");
    }

    const std::vector<double> average = kernels::parallel::column_means(blocks.da);
    double beta = 1.0;
    switch (spec.mode) {
        case ScalingMode::Unscaled: break;
        case ScalingMode::Manual: require_positive(spec.beta, "beta"); beta = spec.beta; break;
        case ScalingMode::Nominal: beta = average_std_ratio(blocks, average); break;
        case ScalingMode::Extreme: beta = percentile_std_ratio(blocks, average, spec.tail_fraction); break;
    }

    ScenarioProfile out;
    out.da = scale_profile(average, beta);
    out.da_mean = mean_of(average);
    const std::vector<double> raw_dev = kernels::parallel::column_mean_deviation(blocks.id, blocks.da);
    out.deviation = zero_mean_correct_segments(raw_dev, blocks.quarters_per_day);
    const double gamma = resolve_gamma(blocks, out.da, out.deviation, spec);
    out.id.resize(out.deviation.size());
    for (std::size_t q = 0; q < out.id.size(); ++q) {
        out.id[q] = out.da[q / kQuartersPerHour] + gamma * out.deviation[q];
    }
    out.scaling = spec;
    out.scaling.beta = beta;
    out.scaling.gamma = gamma;
    return out;
}

}  // namespace detail

}  // namespace priceforge::profile
