#include "priceforge/profile_day.hpp"

namespace priceforge::profile {

std::vector<double> average_da_day(std::span<const DayRecord> days) {
    return kernels::parallel::column_means(blocks_from_days(days).da);
}

double beta_nominal_day(std::span<const DayRecord> days) {
    const HistoricalBlocks blocks = blocks_from_days(days);
    return detail::average_std_ratio(blocks, kernels::parallel::column_means(blocks.da));
}

double beta_extreme_day(std::span<const DayRecord> days, double tail_fraction) {
    const HistoricalBlocks blocks = blocks_from_days(days);
    return detail::percentile_std_ratio(blocks, kernels::parallel::column_means(blocks.da), tail_fraction);
}

std::vector<double> average_id_deviation_day(std::span<const DayRecord> days) {
    const HistoricalBlocks blocks = blocks_from_days(days);
    return kernels::parallel::column_mean_deviation(blocks.id, blocks.da);
}

DayProfile build_day_scenario(std::span<const DayRecord> days, const ScalingSpec& spec) {
    return DayProfile{detail::build(blocks_from_days(days), spec, 2)};
}

}  // namespace priceforge::profile
