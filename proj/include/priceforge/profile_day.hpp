#pragma once

#include <span>
#include <vector>

#include "priceforge/profile.hpp"

namespace priceforge::profile {

/// Per-hour average over all days.
std::vector<double> average_da_day(std::span<const DayRecord> days);

/// Mean daily DA std divided by the std of the averaged profile.
double beta_nominal_day(std::span<const DayRecord> days);

/// Upper-tail percentile of the daily DA stds divided by the averaged profile's std.
double beta_extreme_day(std::span<const DayRecord> days, double tail_fraction);

/// Per-quarter average of ID minus the enclosing hour's DA price.
std::vector<double> average_id_deviation_day(std::span<const DayRecord> days);

DayProfile build_day_scenario(std::span<const DayRecord> days, const ScalingSpec& spec);

}  // namespace priceforge::profile
