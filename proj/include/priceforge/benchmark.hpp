#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "priceforge/clustering.hpp"
#include "priceforge/ingest.hpp"
#include "priceforge/profile.hpp"
#include "priceforge/scenario.hpp"
#include "priceforge/scheduling.hpp"

namespace priceforge::benchmark {

enum class SourceKind { FullYear, DayProfile, WeekProfile, Clusters };

/// One requested scenario source. Token grammar:
///   fullyear | unscaled | nominal | extreme[:F] | manual:BETA:GAMMA
///   week-unscaled | week-nominal | week-extreme[:F] | week-manual:BETA:GAMMA
///   ALGO:CRIT[:K]   with ALGO in kmeans|kmedoids|hier-m|hier-c, CRIT in a|b|c,
///                   K a positive integer or "auto" (elbow over 1..k_max)
struct ScenarioRequest {
    std::string token;
    SourceKind kind = SourceKind::FullYear;
    profile::ScalingSpec scaling;
    clustering::Algorithm algorithm = clustering::Algorithm::KMeans;
    clustering::Criterion criterion = clustering::Criterion::A;
    std::size_t k = 0;  // 0 selects k by the elbow method
    std::size_t k_max = 10;
};

std::optional<ScenarioRequest> parse_scenario(std::string_view token);

/// A request turned into weighted multi-day price sets.
struct ResolvedScenario {
    std::string token;
    std::string generation;  // e.g. "Full year", "Nominal day", "k-medoids (b)"
    std::size_t k = 0;       // cluster count, 0 for non-cluster sources
    std::vector<WeightedScenario> scenarios;
};

ResolvedScenario resolve(const ScenarioRequest& request, const PriceSeries& series);

/// sum_s weight_s * (cost of scheduling scenario s) / (days in s).
double scenario_wdc(std::span<const WeightedScenario> scenarios, const scheduling::PlantParams& params,
                    scheduling::Setup setup, const scheduling::ScheduleOptions& options = {});

struct ReportRow {
    std::string scenario;
    std::string generation;
    std::size_t k = 0;
    double wdc_eur = 0.0;
    double dev_percent = 0.0;
};

struct Report {
    scheduling::Setup setup = scheduling::Setup::I;
    std::vector<ReportRow> rows;  // full-year baseline first
};

/// Solves the full-year baseline and every request; deviations are relative
/// to the baseline WDC.
Report run_benchmark(const PriceSeries& series, std::span<const ScenarioRequest> requests,
                     const scheduling::PlantParams& params, scheduling::Setup setup,
                     const scheduling::ScheduleOptions& options = {});

/// `scenario,generation,k,wdc_eur,dev_percent`; k is "-" for non-cluster rows.
void write_report_csv(std::ostream& os, const Report& report);

}  // namespace priceforge::benchmark
