#include "priceforge/profile_week.hpp"

#include "priceforge/error.hpp"

namespace priceforge::profile {

namespace {

std::size_t min_weeks(const ScalingSpec& spec) {
    return spec.mode == ScalingMode::Extreme ? 2 : 1;
}

}  // namespace

std::vector<double> average_da_week(std::span<const WeekRecord> weeks) {
    return kernels::parallel::column_means(blocks_from_weeks(weeks).da);
}

double beta_week(std::span<const WeekRecord> weeks, const ScalingSpec& mode) {
    const HistoricalBlocks blocks = blocks_from_weeks(weeks);
    switch (mode.mode) {
        case ScalingMode::Unscaled: return 1.0;
        case ScalingMode::Manual: return mode.beta;
        case ScalingMode::Nominal: break;
        case ScalingMode::Extreme:
            if (weeks.size() < 2) {
                throw Error(ErrorCode::EmptyInput, "extreme weekly scaling needs at least two weeks");
            }
            return detail::percentile_std_ratio(blocks, kernels::parallel::column_means(blocks.da),
                                                mode.tail_fraction);
    }
    return detail::average_std_ratio(blocks, kernels::parallel::column_means(blocks.da));
}

std::vector<double> id_deviation_week(std::span<const WeekRecord> weeks) {
    const HistoricalBlocks blocks = blocks_from_weeks(weeks);
    const auto raw = kernels::parallel::column_mean_deviation(blocks.id, blocks.da);
    return zero_mean_correct_segments(raw, blocks.quarters_per_day);
}

double gamma_week(std::span<const WeekRecord> weeks, double beta, const ScalingSpec& mode) {
    if (mode.mode == ScalingMode::Extreme && weeks.size() < 2) {
        throw Error(ErrorCode::EmptyInput, "extreme weekly scaling needs at least two weeks");
    }
    const HistoricalBlocks blocks = blocks_from_weeks(weeks);
    const auto da_scaled = scale_profile(kernels::parallel::column_means(blocks.da), beta);
    const auto raw = kernels::parallel::column_mean_deviation(blocks.id, blocks.da);
    const auto corrected = zero_mean_correct_segments(raw, blocks.quarters_per_day);
    return detail::resolve_gamma(blocks, da_scaled, corrected, mode);
}

WeekProfile build_week_scenario(std::span<const WeekRecord> weeks, const ScalingSpec& spec) {
    return WeekProfile{detail::build(blocks_from_weeks(weeks), spec, min_weeks(spec))};
}

}  // namespace priceforge::profile
