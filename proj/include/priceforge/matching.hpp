#pragma once

#include <span>
#include <string_view>
#include <optional>

#include "priceforge/ingest.hpp"
#include "priceforge/profile.hpp"

namespace priceforge::matching {

enum class MatchScope { Joint, DaOnly, IdOnly };

std::string_view to_string(MatchScope scope);
std::optional<MatchScope> parse_match_scope(std::string_view text);

/// `index` is the 1-based day or week index of the best historical fit.
/// ID absolute deviations are weighted by 1/4 (equal weight per hour).
struct MatchResult {
    std::size_t index = 0;
    double total_mad = 0.0;
    double da_mad = 0.0;
    double id_mad = 0.0;
};

/// Per-candidate objective terms, in record order.
struct MatchObjectives {
    std::vector<double> da;
    std::vector<double> id;  // already weighted by 1/4
};

MatchObjectives match_objectives(const profile::HistoricalBlocks& blocks, const profile::ScenarioProfile& profile);

/// Minimizes the scoped objective; ties go to the smallest index.
MatchResult best_fit(const MatchObjectives& objectives, MatchScope scope);

MatchResult best_fit_day(std::span<const DayRecord> days, const profile::DayProfile& profile,
                         MatchScope scope = MatchScope::Joint);
MatchResult best_fit_week(std::span<const WeekRecord> weeks, const profile::WeekProfile& profile,
                          MatchScope scope = MatchScope::Joint);

}  // namespace priceforge::matching
