#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "priceforge/ingest.hpp"
#include "priceforge/kernels.hpp"
#include "priceforge/stats.hpp"

namespace priceforge::profile {

inline constexpr double kDefaultTailFraction = 0.85;

enum class ScalingMode { Unscaled, Nominal, Extreme, Manual };

std::string_view to_string(ScalingMode mode);
std::optional<ScalingMode> parse_scaling_mode(std::string_view text);

/// How the variance of the averaged profile is scaled. Before construction
/// `beta`/`gamma` are only meaningful for Manual; the built profile carries the
/// resolved values for every mode.
struct ScalingSpec {
    ScalingMode mode = ScalingMode::Unscaled;
    double tail_fraction = kDefaultTailFraction;
    double beta = 1.0;
    double gamma = 1.0;

    static ScalingSpec unscaled() { return {}; }
    static ScalingSpec nominal() { return {ScalingMode::Nominal}; }
    static ScalingSpec extreme(double tail = kDefaultTailFraction) { return {ScalingMode::Extreme, tail}; }
    static ScalingSpec manual(double beta, double gamma) {
        return {ScalingMode::Manual, kDefaultTailFraction, beta, gamma};
    }
};

/// A constructed DA/ID pair. `deviation` is the closed (zero-sum per day)
/// ID-DA deviation before gamma scaling.
struct ScenarioProfile {
    std::vector<double> da;
    std::vector<double> id;
    std::vector<double> deviation;
    ScalingSpec scaling;
    double da_mean = 0.0;
};

struct DayProfile : ScenarioProfile {};
struct WeekProfile : ScenarioProfile {};

/// Historical data laid out one row per day (or per week). `id.cols` is
/// always four times `da.cols`.
struct HistoricalBlocks {
    kernels::RowMatrix da;
    kernels::RowMatrix id;
    std::size_t quarters_per_day = kQuartersPerDay;
};

HistoricalBlocks blocks_from_days(std::span<const DayRecord> days);
HistoricalBlocks blocks_from_weeks(std::span<const WeekRecord> weeks);

/// out[k] = mean(p) + beta (p[k] - mean(p)).
std::vector<double> scale_profile(std::span<const double> profile, double beta);

/// Subtracts the mean so the result sums to zero.
std::vector<double> zero_mean_correct(std::span<const double> deviation);

/// Applies zero_mean_correct to consecutive segments of `segment` values.
std::vector<double> zero_mean_correct_segments(std::span<const double> deviation, std::size_t segment);

/// Smallest-bracket gamma > 0 with
///   sqrt(mean((da_scaled_dev + gamma * corrected_dev)^2)) == target_std.
/// Solved by bisection on the branch where the left side increases.
double gamma_for_target_std(std::span<const double> da_scaled_dev, std::span<const double> corrected_dev,
                            double target_std);

/// Hourly values repeated for each quarter-hour.
std::vector<double> expand_to_quarters(std::span<const double> hourly);

/// DA and ID summaries. DA integral = sum(da), ID integral = sum(id) / 4.
std::pair<stats::StatsSummary, stats::StatsSummary> profile_stats(const ScenarioProfile& profile);

/// Profile repeated `times` back to back (longer horizons from a week).
ScenarioProfile repeat_profile(const ScenarioProfile& profile, std::size_t times);

namespace detail {

double average_std_ratio(const HistoricalBlocks& blocks, std::span<const double> average);
double percentile_std_ratio(const HistoricalBlocks& blocks, std::span<const double> average, double tail);
double resolve_gamma(const HistoricalBlocks& blocks, std::span<const double> da_scaled,
                     std::span<const double> corrected, const ScalingSpec& spec);
ScenarioProfile build(const HistoricalBlocks& blocks, const ScalingSpec& spec, std::size_t min_rows_scaled);

}  // namespace detail

}  // namespace priceforge::profile
