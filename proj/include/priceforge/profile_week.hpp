#pragma once

#include <span>
#include <vector>

#include "priceforge/profile.hpp"

namespace priceforge::profile {

std::vector<double> average_da_week(std::span<const WeekRecord> weeks);

/// Nominal or Extreme weekly beta; other modes resolve to their fixed value.
double beta_week(std::span<const WeekRecord> weeks, const ScalingSpec& mode);

/// Averaged ID-DA deviation with each weekday's 96 entries closed to zero sum.
std::vector<double> id_deviation_week(std::span<const WeekRecord> weeks);

double gamma_week(std::span<const WeekRecord> weeks, double beta, const ScalingSpec& mode);

WeekProfile build_week_scenario(std::span<const WeekRecord> weeks, const ScalingSpec& spec);

}  // namespace priceforge::profile
