#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "priceforge/lp.hpp"
#include "priceforge/scenario.hpp"

namespace priceforge::scheduling {

/// Length of one scheduling interval in hours.
inline constexpr double kIntervalHours = 0.25;

/// Generic flexible load with a product storage. Power in MW, ramp in MW per
/// interval, production in t/MWh, storage in t, offtake in t/h.
struct PlantParams {
    double p_min = 3.0;
    double p_max = 10.0;
    double ramp = 1.0;
    double eta = 1.0;
    double storage_max = 14.0;
    double storage_init = 7.0;
    double demand_rate = 7.0;
    double da_buy_max = 10.0;

    /// InfeasibleSchedule unless 0 <= p_min <= demand/eta <= min(p_max, da_buy_max),
    /// ramp > 0, eta > 0 and storage_init in [0, storage_max].
    void validate() const;
};

/// Reads a JSON object; absent keys keep their defaults, unknown keys are BadConfig.
PlantParams parse_plant_params(std::istream& is);
std::string plant_params_json(const PlantParams& params);

enum class Setup { I, II, III };

std::string_view to_string(Setup setup);
std::optional<Setup> parse_setup(std::string_view text);
/// Human label; setup ii is marked as assuming perfect ID foresight.
std::string_view describe(Setup setup);

/// The three LP shapes a day can take.
enum class Stage {
    DaOnly,        // setup i, and the first stage of iii
    Simultaneous,  // setup ii
    IdRecourse,    // second stage of iii: DA volumes fixed
};

/// One day's LP plus the variable index of each series.
struct DayProblem {
    lp::LpProblem problem;
    std::vector<std::size_t> p_da;  // empty for IdRecourse (DA is data)
    std::vector<std::size_t> p_id;  // empty for DaOnly
    std::vector<std::size_t> storage;
};

/// `da_hours` has T/4 hourly prices, `id_quarters` T prices (may be empty for
/// DaOnly). `fixed_da` (T values) is required for IdRecourse.
DayProblem build_day_problem(std::span<const double> da_hours, std::span<const double> id_quarters,
                             const PlantParams& params, Stage stage, std::span<const double> fixed_da = {});

struct ScheduleOptions {
    std::size_t intervals_per_day = 96;
    bool parallel = true;
};

struct ScheduleResult {
    Setup setup = Setup::I;
    std::vector<double> p_da;           // MW per interval
    std::vector<double> p_id;           // MW per interval, zero in setup i
    std::vector<double> production;     // t/h per interval
    std::vector<double> storage;        // t at the end of each interval
    std::vector<double> interval_cost;  // EUR per interval
    std::vector<double> daily_cost;     // EUR per day
    double objective = 0.0;             // EUR over the horizon
    std::size_t lp_iterations = 0;

    std::size_t days() const { return daily_cost.size(); }
    double average_daily_cost() const;
};

/// Solves one LP per day (storage is pinned at every day boundary and ramp
/// limits apply within a day, so days are independent) and concatenates.
/// Throws MissingIdPrices, InfeasibleSchedule, DimensionMismatch.
ScheduleResult schedule(std::span<const double> da, std::span<const double> id, const PlantParams& params,
                        Setup setup, const ScheduleOptions& options = {});

/// The whole horizon as a single LP (block-diagonal); reference for the
/// daily decomposition. Only DaOnly and Simultaneous stages.
DayProblem build_horizon_problem(std::span<const double> da, std::span<const double> id, const PlantParams& params,
                                 Stage stage, std::size_t intervals_per_day = 96);

struct WeightedCost {
    double average_daily_cost = 0.0;
    double weight = 0.0;
};

/// sum_s weight_s * average_daily_cost_s. BadWeights unless the weights are
/// non-negative and sum to one (1e-9).
double wdc(std::span<const WeightedCost> costs);

/// `t,p_da_mw,p_id_mw,m_tph,s_t`, t starting at 1.
void write_schedule_csv(std::ostream& os, const ScheduleResult& result);

}  // namespace priceforge::scheduling
