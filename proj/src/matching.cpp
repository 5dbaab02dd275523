#include "priceforge/matching.hpp"

#include "priceforge/error.hpp"

namespace priceforge::matching {

std::string_view to_string(MatchScope scope) {
    switch (scope) {
        case MatchScope::Joint: return "joint";
        case MatchScope::DaOnly: return "da";
        case MatchScope::IdOnly: return "id";
    }
    return "unknown";
}

std::optional<MatchScope> parse_match_scope(std::string_view text) {
    for (MatchScope s : {MatchScope::Joint, MatchScope::DaOnly, MatchScope::IdOnly}) {
        if (text == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

MatchObjectives match_objectives(const profile::HistoricalBlocks& blocks, const profile::ScenarioProfile& profile) {
    if (blocks.da.rows == 0) {
        throw Error(ErrorCode::EmptyInput, "no historical records to match against");
    }
    MatchObjectives out{kernels::parallel::row_abs_deviation(blocks.da, profile.da),
                        kernels::parallel::row_abs_deviation(blocks.id, profile.id)};
    for (double& v : out.id) {
        v /= static_cast<double>(kQuartersPerHour);
    }
    return out;
}

MatchResult best_fit(const MatchObjectives& objectives, MatchScope scope) {
    if (objectives.da.empty()) {
        throw Error(ErrorCode::EmptyInput, "no candidates");
    }
    const auto objective = [&](std::size_t i) {
        switch (scope) {
            case MatchScope::DaOnly: return objectives.da[i];
            case MatchScope::IdOnly: return objectives.id[i];
            case MatchScope::Joint: break;
        }
        return objectives.da[i] + objectives.id[i];
    };
    std::size_t best = 0;
    double best_value = objective(0);
    for (std::size_t i = 1; i < objectives.da.size(); ++i) {
        const double value = objective(i);
        if (value < best_value) {
            best = i;
            best_value = value;
        }
    }
    return {best + 1, objectives.da[best] + objectives.id[best], objectives.da[best], objectives.id[best]};
}

MatchResult best_fit_day(std::span<const DayRecord> days, const profile::DayProfile& profile, MatchScope scope) {
    const auto blocks = profile::blocks_from_days(days);
    MatchResult result = best_fit(match_objectives(blocks, profile), scope);
    if (const std::size_t recorded = days[result.index - 1].day_index; recorded != 0) {
        result.index = recorded;
    }
    return result;
}

MatchResult best_fit_week(std::span<const WeekRecord> weeks, const profile::WeekProfile& profile, MatchScope scope) {
    const auto blocks = profile::blocks_from_weeks(weeks);
    MatchResult result = best_fit(match_objectives(blocks, profile), scope);
    if (const std::size_t recorded = weeks[result.index - 1].week_index; recorded != 0) {
        result.index = recorded;
    }
    return result;
}

}  // namespace priceforge::matching
