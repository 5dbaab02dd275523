#include "priceforge/benchmark.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "priceforge/error.hpp"
#include "priceforge/profile_day.hpp"
#include "priceforge/profile_week.hpp"

namespace priceforge::benchmark {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(sep, start);
        parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return parts;
        }
        start = end + 1;
    }
}

std::optional<double> to_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::size_t> to_count(std::string_view text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        return std::nullopt;
    }
    return value;
}

std::string_view mode_label(profile::ScalingMode mode) {
    switch (mode) {
        case profile::ScalingMode::Unscaled: return "Unscaled";
        case profile::ScalingMode::Nominal: return "Nominal";
        case profile::ScalingMode::Extreme: return "Extreme";
        case profile::ScalingMode::Manual: return "Manual";
    }
    return "?";
}

std::string_view algorithm_label(clustering::Algorithm a) {
    switch (a) {
        case clustering::Algorithm::KMeans: return "k-means";
        case clustering::Algorithm::KMedoids: return "k-medoids";
        case clustering::Algorithm::HierarchicalMedoid: return "Hierarchical-m";
        case clustering::Algorithm::HierarchicalCentroid: return "Hierarchical-c";
    }
    return "?";
}

}  // namespace

std::optional<ScenarioRequest> parse_scenario(std::string_view token) {
    ScenarioRequest r;
    r.token = std::string(token);
    const auto parts = split(token, ':');
    std::string_view head = parts[0];

    if (head == "fullyear") {
        if (parts.size() != 1) {
            return std::nullopt;
        }
        r.kind = SourceKind::FullYear;
        return r;
    }
    if (const auto algo = clustering::parse_algorithm(head)) {
        if (parts.size() < 2 || parts.size() > 3) {
            return std::nullopt;
        }
        const auto criterion = clustering::parse_criterion(parts[1]);
        if (!criterion) {
            return std::nullopt;
        }
        r.kind = SourceKind::Clusters;
        r.algorithm = *algo;
        r.criterion = *criterion;
        if (parts.size() == 3 && parts[2] != "auto") {
            const auto k = to_count(parts[2]);
            if (!k) {
                return std::nullopt;
            }
            r.k = *k;
        }
        return r;
    }

    r.kind = SourceKind::DayProfile;
    if (head.starts_with("week-")) {
        r.kind = SourceKind::WeekProfile;
        head.remove_prefix(5);
    }
    const auto mode = profile::parse_scaling_mode(head);
    if (!mode) {
        return std::nullopt;
    }
    switch (*mode) {
        case profile::ScalingMode::Unscaled:
        case profile::ScalingMode::Nominal:
            if (parts.size() != 1) {
                return std::nullopt;
            }
            r.scaling = *mode == profile::ScalingMode::Nominal ? profile::ScalingSpec::nominal()
                                                               : profile::ScalingSpec::unscaled();
            break;
        case profile::ScalingMode::Extreme: {
            if (parts.size() > 2) {
                return std::nullopt;
            }
            const auto tail = parts.size() == 2 ? to_double(parts[1]) : std::optional<double>(profile::kDefaultTailFraction);
            if (!tail) {
                return std::nullopt;
            }
            r.scaling = profile::ScalingSpec::extreme(*tail);
            break;
        }
        case profile::ScalingMode::Manual: {
            if (parts.size() != 3) {
                return std::nullopt;
            }
            const auto beta = to_double(parts[1]);
            const auto gamma = to_double(parts[2]);
            if (!beta || !gamma) {
                return std::nullopt;
            }
            r.scaling = profile::ScalingSpec::manual(*beta, *gamma);
            break;
        }
    }
    return r;
}

ResolvedScenario resolve(const ScenarioRequest& request, const PriceSeries& series) {
    ResolvedScenario out;
    out.token = request.token;
    switch (request.kind) {
        case SourceKind::FullYear:
            out.generation = "Full year";
            out.scenarios.push_back({PriceScenario{series.da, series.id}, 1.0});
            break;
        case SourceKind::DayProfile: {
            const auto days = slice_days(series);
            const auto p = profile::build_day_scenario(days, request.scaling);
            out.generation = std::string(mode_label(request.scaling.mode)) + " day";
            out.scenarios.push_back({PriceScenario{p.da, p.id}, 1.0});
            break;
        }
        case SourceKind::WeekProfile: {
            const auto weeks = slice_weeks(series);
            const auto p = profile::build_week_scenario(weeks, request.scaling);
            out.generation = std::string(mode_label(request.scaling.mode)) + " week";
            out.scenarios.push_back({PriceScenario{p.da, p.id}, 1.0});
            break;
        }
        case SourceKind::Clusters: {
            const auto days = slice_days(series);
            const auto features = clustering::extract_features(days, request.criterion);
            const std::size_t k =
                request.k != 0 ? request.k : clustering::elbow_k(features, request.algorithm, request.k_max);
            const auto clusters = clustering::run(features, request.algorithm, k);
            out.generation = std::string(algorithm_label(request.algorithm)) + " (" +
                             std::string(clustering::to_string(request.criterion)) + ")";
            out.k = k;
            out.scenarios = clustering::cluster_scenarios(clusters, days);
            break;
        }
    }
    return out;
}

double scenario_wdc(std::span<const WeightedScenario> scenarios, const scheduling::PlantParams& params,
                    scheduling::Setup setup, const scheduling::ScheduleOptions& options) {
    std::vector<scheduling::WeightedCost> costs;
    costs.reserve(scenarios.size());
    for (const WeightedScenario& s : scenarios) {
        const auto result = scheduling::schedule(s.prices.da, s.prices.id, params, setup, options);
        costs.push_back({result.average_daily_cost(), s.weight});
    }
    return scheduling::wdc(costs);
}

Report run_benchmark(const PriceSeries& series, std::span<const ScenarioRequest> requests,
                     const scheduling::PlantParams& params, scheduling::Setup setup,
                     const scheduling::ScheduleOptions& options) {
    Report report;
    report.setup = setup;
    ScenarioRequest baseline;
    baseline.token = "fullyear";
    std::vector<ScenarioRequest> all{baseline};
    all.insert(all.end(), requests.begin(), requests.end());
    for (const ScenarioRequest& request : all) {
        const ResolvedScenario resolved = resolve(request, series);
        ReportRow row;
        row.scenario = resolved.token;
        row.generation = resolved.generation;
        row.k = resolved.k;
        row.wdc_eur = scenario_wdc(resolved.scenarios, params, setup, options);
        report.rows.push_back(row);
    }
    const double base = report.rows.front().wdc_eur;
    for (ReportRow& row : report.rows) {
        row.dev_percent = base != 0.0 ? 100.0 * (row.wdc_eur - base) / std::abs(base) : 0.0;
    }
    return report;
}

void write_report_csv(std::ostream& os, const Report& report) {
    os << "scenario,generation,k,wdc_eur,dev_percent\n";
    char buf[64];
    for (const ReportRow& row : report.rows) {
        os << row.scenario << ',' << row.generation << ',' << (row.k == 0 ? std::string("-") : std::to_string(row.k))
           << ',';
        std::snprintf(buf, sizeof buf, "%.2f,%.3f", row.wdc_eur, row.dev_percent);
        std::string text = buf;
        if (text.ends_with(",-0.000")) {
            text.replace(text.size() - 6, 6, "0.000");
        }
        os << text << '\n';
    }
}

}  // namespace priceforge::benchmark
