#pragma once

#include <vector>

namespace priceforge {

/// Prices the scheduler consumes: hourly DA and quarter-hourly ID (EUR/MWh).
/// `id` may be empty for DA-only use.
struct PriceScenario {
    std::vector<double> da;
    std::vector<double> id;
};

/// A scenario with its weight in the weighted daily cost (cluster share).
struct WeightedScenario {
    PriceScenario prices;
    double weight = 1.0;
};

}  // namespace priceforge
