#include "priceforge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "priceforge/benchmark.hpp"
#include "priceforge/clustering.hpp"
#include "priceforge/error.hpp"
#include "priceforge/export.hpp"
#include "priceforge/ingest.hpp"
#include "priceforge/matching.hpp"
#include "priceforge/profile_day.hpp"
#include "priceforge/profile_week.hpp"
#include "priceforge/scheduling.hpp"
#include "priceforge/stats.hpp"
#include "priceforge/synth.hpp"

namespace priceforge::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Raised for flag combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputFlags {
    std::string da;
    std::string id;
    bool strict = false;
};

struct ScalingFlags {
    std::string mode = "nominal";
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> tail;
};

struct Loaded {
    PriceSeries series;
    CalendarReport report;
    std::string fingerprint;
};

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::optional<Manifest> sidecar_manifest(const std::string& csv_path) {
    fs::path manifest = csv_path;
    manifest.replace_extension(".json");
    if (manifest == fs::path(csv_path) || !fs::exists(manifest)) {
        return std::nullopt;
    }
    std::ifstream is(manifest, std::ios::binary);
    return parse_manifest(is);
}

// Timezone precedence: PRICEFORGE_TZ, then the manifests, then the default.
std::string resolve_timezone(const InputFlags& flags) {
    if (const char* env = std::getenv("PRICEFORGE_TZ"); env != nullptr && *env != '\0') {
        return env;
    }
    const auto da = sidecar_manifest(flags.da);
    const auto id = sidecar_manifest(flags.id);
    if (da && id && da->timezone != id->timezone) {
        throw Error(ErrorCode::BadConfig,
                    "DA and ID manifests disagree on the timezone (" + da->timezone + " vs " + id->timezone + ")");
    }
    if (da) {
        return da->timezone;
    }
    if (id) {
        return id->timezone;
    }
    return IngestOptions{}.timezone;
}

Loaded load(const InputFlags& flags) {
    Loaded out;
    const std::string da_bytes = io::read_file(flags.da);
    const std::string id_bytes = io::read_file(flags.id);
    IngestOptions options;
    options.timezone = resolve_timezone(flags);
    if (flags.strict) {
        options.max_gap_fill = 0;
    }
    std::istringstream da(da_bytes);
    std::istringstream id(id_bytes);
    out.series = parse_price_csv(da, id, options, &out.report);
    out.fingerprint = io::input_fingerprint(da_bytes, id_bytes);
    return out;
}

void add_inputs(CLI::App* cmd, InputFlags& flags) {
    cmd->add_option("--da", flags.da, "hourly DA price CSV (timestamp,price_eur_mwh)")->required();
    cmd->add_option("--id", flags.id, "quarter-hourly ID price CSV (timestamp,price_eur_mwh)")->required();
    cmd->add_flag("--strict", flags.strict, "treat any missing non-DST interval as an error");
}

void add_scaling(CLI::App* cmd, ScalingFlags& flags) {
    cmd->add_option("--mode", flags.mode, "scaling mode")
        ->check(CLI::IsMember({"unscaled", "nominal", "extreme", "manual"}))
        ->capture_default_str();
    cmd->add_option("--beta", flags.beta, "DA scaling factor (manual mode)");
    cmd->add_option("--gamma", flags.gamma, "ID deviation scaling factor (manual mode)");
    cmd->add_option("--tail", flags.tail,
                    "upper-tail fraction for extreme mode (default 0.85). Very volatile weeks rarely follow the "
                    "typical weekly pattern, so a lower fraction can suit week profiles better");
}

profile::ScalingSpec scaling_spec(const ScalingFlags& flags) {
    const auto mode = profile::parse_scaling_mode(flags.mode);
    if (!mode) {
        throw UsageError("unknown --mode " + flags.mode);
    }
    if (flags.tail && !(*flags.tail > 0.0 && *flags.tail < 1.0)) {
        throw UsageError("--tail must lie strictly between 0 and 1");
    }
    if (*mode != profile::ScalingMode::Manual && (flags.beta || flags.gamma)) {
        throw UsageError("--beta/--gamma are only valid with --mode manual");
    }
    if (*mode != profile::ScalingMode::Extreme && flags.tail) {
        throw UsageError("--tail is only valid with --mode extreme");
    }
    switch (*mode) {
        case profile::ScalingMode::Unscaled: return profile::ScalingSpec::unscaled();
        case profile::ScalingMode::Nominal: return profile::ScalingSpec::nominal();
        case profile::ScalingMode::Extreme:
            return profile::ScalingSpec::extreme(flags.tail.value_or(profile::kDefaultTailFraction));
        case profile::ScalingMode::Manual:
            if (!flags.beta || !flags.gamma) {
                throw UsageError("--mode manual needs both --beta and --gamma");
            }
            return profile::ScalingSpec::manual(*flags.beta, *flags.gamma);
    }
    throw UsageError("unknown --mode " + flags.mode);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string path_in(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::string series_csv(std::span<const double> values, std::string_view index, std::string_view value) {
    std::ostringstream os;
    io::write_series_csv(os, values, index, value);
    return os.str();
}

void print_scaling(std::ostream& out, const profile::ScenarioProfile& p) {
    if (p.scaling.mode == profile::ScalingMode::Extreme) {
        out << "tail fraction: " << fixed(p.scaling.tail_fraction, 4) << '\n';
    }
    out << "beta: " << fixed(p.scaling.beta, 6) << '\n' << "gamma: " << fixed(p.scaling.gamma, 6) << '\n';
}

// ---------------------------------------------------------------- commands

void cmd_ingest(const InputFlags& in, const std::string& out_dir, std::ostream& out) {
    const Loaded data = load(in);
    std::ostringstream da, id;
    write_price_csv(data.series, da, id);
    io::write_file(path_in(out_dir, "da.csv"), da.str());
    io::write_file(path_in(out_dir, "id.csv"), id.str());
    json doc;
    doc["input_sha256"] = data.fingerprint;
    doc["start_date"] = format_date(data.series.start_date);
    doc["end_date"] = format_date(add_days(data.series.start_date, static_cast<long>(data.series.n_days) - 1));
    doc["n_days"] = data.series.n_days;
    doc["timezone"] = data.report.timezone;
    doc["dst_policy"] = data.report.dst_policy;
    doc["dst_events"] = data.report.dst_events;
    doc["warnings"] = data.report.warnings;
    doc["dropped_leading_days"] = data.report.dropped_leading_days;
    doc["dropped_trailing_days"] = data.report.dropped_trailing_days;
    io::write_file(path_in(out_dir, "calendar.json"), dump(doc));
    out << "days: " << data.series.n_days << " (" << doc["start_date"].get<std::string>() << " to "
        << doc["end_date"].get<std::string>() << ")\n";
    for (const auto& w : data.report.warnings) {
        out << "warning: " << w << '\n';
    }
}

void cmd_profile(const std::string& horizon, const InputFlags& in, const ScalingFlags& sf, std::size_t repeat,
                 const std::string& format, const std::string& out_dir, std::ostream& out) {
    const profile::ScalingSpec spec = scaling_spec(sf);
    if (horizon == "day" && repeat != 1) {
        throw UsageError("--repeat applies to week profiles only");
    }
    const Loaded data = load(in);
    profile::ScenarioProfile p;
    if (horizon == "day") {
        p = profile::build_day_scenario(slice_days(data.series), spec);
    } else {
        p = profile::build_week_scenario(slice_weeks(data.series), spec);
    }
    json bundle = io::profile_bundle(p, horizon, data.fingerprint);
    io::write_file(path_in(out_dir, horizon + "_profile.json"), dump(bundle));
    if (format == "csv") {
        const profile::ScenarioProfile exported = repeat > 1 ? profile::repeat_profile(p, repeat) : p;
        if (horizon == "day") {
            io::write_file(path_in(out_dir, "day_da.csv"), series_csv(exported.da, "hour", "price_eur_mwh"));
            io::write_file(path_in(out_dir, "day_id.csv"), series_csv(exported.id, "quarter", "price_eur_mwh"));
        } else {
            io::write_file(path_in(out_dir, "week_da.csv"), series_csv(exported.da, "hour_of_week", "price"));
            io::write_file(path_in(out_dir, "week_id.csv"), series_csv(exported.id, "quarter_of_week", "price"));
        }
    }
    out << horizon << " profile (" << profile::to_string(p.scaling.mode) << ")\n";
    print_scaling(out, p);
    const auto [da, id] = profile::profile_stats(p);
    out << "da mean: " << fixed(da.mean, 2) << "  da std: " << fixed(da.std, 2) << "  id std: " << fixed(id.std, 2)
        << "  integral: " << fixed(da.integral, 2) << '\n';
}

void cmd_stats(const InputFlags& in, const std::string& out_dir, std::ostream& out) {
    const Loaded data = load(in);
    const auto days = slice_days(data.series);
    std::vector<double> da_std, id_std, deviation;
    for (const DayRecord& d : days) {
        da_std.push_back(stats::population_std(d.da));
        id_std.push_back(stats::population_std(d.id));
        for (std::size_t q = 0; q < d.id.size(); ++q) {
            deviation.push_back(d.id[q] - d.da[q / kQuartersPerHour]);
        }
    }
    json doc;
    doc["input_sha256"] = data.fingerprint;
    doc["n_days"] = data.series.n_days;
    doc["da"] = io::summary_json(stats::summarize(data.series.da, 1.0));
    doc["id"] = io::summary_json(stats::summarize(data.series.id, 0.25));
    doc["deviation"] = io::summary_json(stats::summarize(deviation, 0.25));
    doc["daily_da_std"] = io::summary_json(stats::summarize(da_std, 0.0));
    doc["daily_id_std"] = io::summary_json(stats::summarize(id_std, 0.0));
    std::optional<stats::Histogram> histogram;
    try {
        histogram = stats::scott_histogram(da_std);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSample) {
            throw;
        }
    }
    if (histogram) {
        doc["daily_da_std_histogram"] = {{"bin_edges", histogram->bin_edges}, {"counts", histogram->counts}};
        std::ostringstream os;
        stats::write_histogram_csv(*histogram, os);
        io::write_file(path_in(out_dir, "histogram_da_std.csv"), os.str());
    }
    json peaks = json::array();
    if (deviation.size() >= 8) {
        for (const auto& p : stats::dominant_frequencies(deviation, 0.25, 5)) {
            peaks.push_back({{"frequency_per_hour", p.frequency}, {"power", p.power}});
        }
    }
    doc["deviation_dominant_frequencies"] = peaks;
    io::write_file(path_in(out_dir, "stats.json"), dump(doc));
    out << "da mean: " << fixed(doc["da"]["mean"].get<double>(), 2)
        << "  da std: " << fixed(doc["da"]["std"].get<double>(), 2)
        << "  id std: " << fixed(doc["id"]["std"].get<double>(), 2)
        << "  deviation mean: " << fixed(doc["deviation"]["mean"].get<double>(), 2) << '\n';
    for (const auto& p : peaks) {
        out << "deviation peak: " << fixed(p["frequency_per_hour"].get<double>(), 4) << " 1/h\n";
    }
}

void cmd_match(const std::string& horizon, const InputFlags& in, const ScalingFlags& sf, const std::string& scope_text,
               const std::string& format, const std::string& out_dir, std::ostream& out) {
    const profile::ScalingSpec spec = scaling_spec(sf);
    const auto scope = matching::parse_match_scope(scope_text);
    if (!scope) {
        throw UsageError("unknown --scope " + scope_text);
    }
    const Loaded data = load(in);
    matching::MatchResult best;
    std::string date;
    if (horizon == "day") {
        const auto days = slice_days(data.series);
        const auto p = profile::build_day_scenario(days, spec);
        best = matching::best_fit_day(days, p, *scope);
        date = format_date(days[best.index - 1].date);
    } else {
        const auto weeks = slice_weeks(data.series);
        const auto p = profile::build_week_scenario(weeks, spec);
        best = matching::best_fit_week(weeks, p, *scope);
        date = format_date(weeks[best.index - 1].days.front().date);
    }
    if (format == "json") {
        json doc;
        doc["input_sha256"] = data.fingerprint;
        doc["horizon"] = horizon;
        doc["mode"] = sf.mode;
        doc["scope"] = scope_text;
        doc["index"] = best.index;
        doc["date"] = date;
        doc["total_mad"] = best.total_mad;
        doc["da_mad"] = best.da_mad;
        doc["id_mad"] = best.id_mad;
        io::write_file(path_in(out_dir, "match.json"), dump(doc));
    } else {
        io::write_file(path_in(out_dir, "match.csv"), "index,date,total_mad,da_mad,id_mad\n" +
                                                          std::to_string(best.index) + ',' + date + ',' +
                                                          fixed(best.total_mad, 4) + ',' + fixed(best.da_mad, 4) +
                                                          ',' + fixed(best.id_mad, 4) + '\n');
    }
    out << "best " << horizon << ": " << best.index << " (" << date << ")  total_mad " << fixed(best.total_mad, 2)
        << '\n';
}

std::size_t parse_k(const std::string& text, bool& automatic) {
    automatic = text == "auto";
    if (automatic) {
        return 0;
    }
    std::size_t pos = 0;
    long long k = 0;
    try {
        k = std::stoll(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || k < 1) {
        throw UsageError("--k must be a positive integer or 'auto'");
    }
    return static_cast<std::size_t>(k);
}

void cmd_cluster(const InputFlags& in, const std::string& criterion_text, const std::string& algo_text,
                 const std::string& k_text, std::size_t k_max, const std::string& format, const std::string& out_dir,
                 std::ostream& out) {
    bool automatic = false;
    std::size_t k = parse_k(k_text, automatic);
    const auto criterion = clustering::parse_criterion(criterion_text);
    const auto algorithm = clustering::parse_algorithm(algo_text);
    if (!criterion || !algorithm) {
        throw UsageError("unknown --criterion or --algo");
    }
    const Loaded data = load(in);
    const auto days = slice_days(data.series);
    const auto features = clustering::extract_features(days, *criterion);
    if (automatic) {
        k = clustering::elbow_k(features, *algorithm, k_max);
    }
    const auto clusters = clustering::run(features, *algorithm, k);
    const auto scenarios = clustering::cluster_scenarios(clusters, days);

    json doc;
    doc["input_sha256"] = data.fingerprint;
    doc["algorithm"] = algo_text;
    doc["criterion"] = criterion_text;
    doc["k"] = k;
    doc["k_selection"] = automatic ? "elbow" : "fixed";
    doc["wcss"] = clustering::wcss(features, clusters);
    doc["weights"] = clusters.weights;
    json assignment = json::array();
    for (std::size_t r = 0; r < days.size(); ++r) {
        assignment.push_back({{"date", format_date(days[r].date)}, {"cluster", clusters.assignment[r] + 1}});
    }
    doc["assignment"] = assignment;
    json reps = json::array();
    for (std::size_t s = 0; s < k; ++s) {
        json rep;
        rep["cluster"] = s + 1;
        rep["weight"] = clusters.weights[s];
        if (clusters.representative == clustering::Representative::Medoid) {
            rep["medoid_date"] = format_date(days[clusters.medoids[s]].date);
        }
        rep["da"] = scenarios[s].prices.da;
        rep["id"] = scenarios[s].prices.id;
        reps.push_back(rep);
    }
    doc["representatives"] = reps;
    io::write_file(path_in(out_dir, "clusters.json"), dump(doc));

    if (format == "csv") {
        std::string csv = "date,cluster\n";
        for (std::size_t r = 0; r < days.size(); ++r) {
            csv += format_date(days[r].date) + ',' + std::to_string(clusters.assignment[r] + 1) + '\n';
        }
        io::write_file(path_in(out_dir, "assignment.csv"), csv);
        std::string weights = "cluster,size,weight,medoid_date\n";
        for (std::size_t s = 0; s < k; ++s) {
            const auto size = static_cast<std::size_t>(std::llround(clusters.weights[s] * days.size()));
            weights += std::to_string(s + 1) + ',' + std::to_string(size) + ',' + fixed(clusters.weights[s], 6) + ',';
            if (clusters.representative == clustering::Representative::Medoid) {
                weights += format_date(days[clusters.medoids[s]].date);
            }
            weights += '\n';
            const std::string stem = "cluster_" + std::to_string(s + 1);
            io::write_file(path_in(out_dir, stem + "_da.csv"), series_csv(scenarios[s].prices.da, "hour", "price_eur_mwh"));
            io::write_file(path_in(out_dir, stem + "_id.csv"),
                           series_csv(scenarios[s].prices.id, "quarter", "price_eur_mwh"));
        }
        io::write_file(path_in(out_dir, "weights.csv"), weights);
    }
    out << algo_text << " (" << criterion_text << "): k = " << k << (automatic ? " (elbow)" : "") << '\n';
    for (std::size_t s = 0; s < k; ++s) {
        out << "  cluster " << s + 1 << ": weight " << fixed(clusters.weights[s], 4) << '\n';
    }
}

scheduling::PlantParams load_plant(const std::string& path) {
    if (path.empty()) {
        return {};
    }
    std::istringstream is(io::read_file(path));
    auto params = scheduling::parse_plant_params(is);
    params.validate();
    return params;
}

scheduling::Setup setup_of(const std::string& text) {
    const auto setup = scheduling::parse_setup(text);
    if (!setup) {
        throw UsageError("unknown --setup " + text);
    }
    return *setup;
}

benchmark::ScenarioRequest scenario_of(const std::string& token) {
    auto request = benchmark::parse_scenario(token);
    if (!request) {
        throw UsageError("cannot parse scenario '" + token + "'");
    }
    return *request;
}

void cmd_schedule(const InputFlags& in, const std::string& setup_text, const std::string& plant_path,
                  const std::string& scenario, bool dump_lp, const std::string& format, const std::string& out_dir,
                  std::ostream& out) {
    const auto setup = setup_of(setup_text);
    const auto request = scenario_of(scenario);
    const auto params = load_plant(plant_path);
    const Loaded data = load(in);
    const auto resolved = benchmark::resolve(request, data.series);

    scheduling::ScheduleResult combined;
    combined.setup = setup;
    std::vector<scheduling::WeightedCost> costs;
    json parts = json::array();
    for (const WeightedScenario& s : resolved.scenarios) {
        const auto r = scheduling::schedule(s.prices.da, s.prices.id, params, setup);
        costs.push_back({r.average_daily_cost(), s.weight});
        json part;
        part["weight"] = s.weight;
        part["days"] = r.days();
        part["objective_eur"] = r.objective;
        part["average_daily_cost_eur"] = r.average_daily_cost();
        part["daily_cost_eur"] = r.daily_cost;
        parts.push_back(part);
        const auto append = [](std::vector<double>& dst, const std::vector<double>& src) {
            dst.insert(dst.end(), src.begin(), src.end());
        };
        append(combined.p_da, r.p_da);
        append(combined.p_id, r.p_id);
        append(combined.production, r.production);
        append(combined.storage, r.storage);
    }
    const double value = scheduling::wdc(costs);

    if (dump_lp) {
        const WeightedScenario& first = resolved.scenarios.front();
        const auto stage = setup == scheduling::Setup::II ? scheduling::Stage::Simultaneous : scheduling::Stage::DaOnly;
        const auto id_day = first.prices.id.empty() ? std::span<const double>{}
                                                    : std::span<const double>(first.prices.id).first(kQuartersPerDay);
        const auto problem = scheduling::build_day_problem(
            std::span<const double>(first.prices.da).first(kHoursPerDay), id_day, params, stage);
        std::ostringstream os;
        lp::write_lp_text(os, problem.problem);
        io::write_file(path_in(out_dir, "day1.lp"), os.str());
    }

    json doc;
    doc["input_sha256"] = data.fingerprint;
    doc["setup"] = setup_text;
    doc["setup_label"] = scheduling::describe(setup);
    doc["scenario"] = resolved.token;
    doc["generation"] = resolved.generation;
    doc["wdc_eur"] = value;
    doc["plant"] = json::parse(scheduling::plant_params_json(params));
    doc["scenarios"] = parts;
    io::write_file(path_in(out_dir, "schedule.json"), dump(doc));
    if (format == "csv") {
        std::ostringstream os;
        scheduling::write_schedule_csv(os, combined);
        io::write_file(path_in(out_dir, "schedule.csv"), os.str());
    }
    out << "setup " << setup_text << " (" << scheduling::describe(setup) << "), scenario " << resolved.token
        << ": WDC " << fixed(value, 2) << " EUR\n";
}

void cmd_benchmark(const InputFlags& in, const std::string& setup_text, const std::string& plant_path,
                   const std::string& scenarios, std::size_t k_max, const std::string& format,
                   const std::string& out_dir, std::ostream& out) {
    const auto setup = setup_of(setup_text);
    std::vector<benchmark::ScenarioRequest> requests;
    std::stringstream list(scenarios);
    for (std::string token; std::getline(list, token, ',');) {
        if (token.empty()) {
            continue;
        }
        requests.push_back(scenario_of(token));
        requests.back().k_max = k_max;
    }
    const auto params = load_plant(plant_path);
    const Loaded data = load(in);
    const auto report = benchmark::run_benchmark(data.series, requests, params, setup);

    if (format == "json") {
        json doc;
        doc["input_sha256"] = data.fingerprint;
        doc["setup"] = setup_text;
        doc["setup_label"] = scheduling::describe(setup);
        json rows = json::array();
        for (const auto& r : report.rows) {
            rows.push_back({{"scenario", r.scenario},
                            {"generation", r.generation},
                            {"k", r.k},
                            {"wdc_eur", r.wdc_eur},
                            {"dev_percent", r.dev_percent}});
        }
        doc["rows"] = rows;
        io::write_file(path_in(out_dir, "benchmark.json"), dump(doc));
    } else {
        std::ostringstream os;
        benchmark::write_report_csv(os, report);
        io::write_file(path_in(out_dir, "benchmark.csv"), os.str());
    }
    out << "setup " << setup_text << " (" << scheduling::describe(setup) << ")\n";
    for (const auto& r : report.rows) {
        out << "  " << r.scenario << ": WDC " << fixed(r.wdc_eur, 2) << " EUR, dev " << fixed(r.dev_percent, 2)
            << " %\n";
    }
}

void cmd_synth(const std::string& spec_path, const std::string& fixture, const std::string& out_dir,
               std::ostream& out) {
    synth::YearSpec spec;
    if (!spec_path.empty()) {
        std::istringstream is(io::read_file(spec_path));
        spec = synth::parse_year_spec(is);
    } else if (fixture == "synth2023") {
        spec = synth::synth2023();
    } else {
        throw UsageError("unknown fixture " + fixture);
    }
    synth::gen_synthetic(spec, out_dir);
    out << "wrote " << spec.n_days << " days from " << format_date(spec.start_date) << " to " << out_dir << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Representative DA/ID electricity price scenarios and scheduling benchmarks", "priceforge"};
    app.require_subcommand(1);

    InputFlags in;
    ScalingFlags scaling;
    std::string out_dir = ".";
    std::string format = "csv";
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
        cmd->add_option("--format", format, "primary artifact format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    auto* ingest = app.add_subcommand("ingest", "validate and normalize a DA/ID price pair");
    add_inputs(ingest, in);
    add_common(ingest);

    std::string horizon = "day";
    std::size_t repeat = 1;
    auto* profile_cmd = app.add_subcommand("profile", "build a day or week price profile");
    profile_cmd->add_option("horizon", horizon, "day or week")->required()->check(CLI::IsMember({"day", "week"}));
    add_inputs(profile_cmd, in);
    add_scaling(profile_cmd, scaling);
    profile_cmd->add_option("--repeat", repeat, "repeat the exported week profile N times")
        ->check(CLI::PositiveNumber);
    add_common(profile_cmd);

    auto* stats_cmd = app.add_subcommand("stats", "descriptive statistics of the price data");
    add_inputs(stats_cmd, in);
    add_common(stats_cmd);

    std::string scope = "joint";
    auto* match = app.add_subcommand("match", "best-fitting historical day or week for a profile");
    add_inputs(match, in);
    add_scaling(match, scaling);
    match->add_option("--horizon", horizon, "day or week")
        ->check(CLI::IsMember({"day", "week"}))
        ->capture_default_str();
    match->add_option("--scope", scope, "objective terms")
        ->check(CLI::IsMember({"joint", "da", "id"}))
        ->capture_default_str();
    add_common(match);

    std::string criterion = "b";
    std::string algo = "kmeans";
    std::string k_text = "auto";
    std::size_t k_max = 10;
    auto* cluster = app.add_subcommand("cluster", "cluster days into weighted representatives");
    add_inputs(cluster, in);
    cluster->add_option("--criterion", criterion, "feature set")
        ->check(CLI::IsMember({"a", "b", "c"}))
        ->capture_default_str();
    cluster->add_option("--algo", algo, "clustering algorithm")
        ->check(CLI::IsMember({"kmeans", "kmedoids", "hier-m", "hier-c"}))
        ->capture_default_str();
    cluster->add_option("--k", k_text, "cluster count or 'auto' (elbow)")->capture_default_str();
    cluster->add_option("--k-max", k_max, "largest k tried by the elbow method")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    add_common(cluster);

    std::string setup = "i";
    std::string plant;
    std::string scenario = "fullyear";
    bool dump_lp = false;
    auto* schedule = app.add_subcommand("schedule", "solve the scheduling LP for one scenario source");
    add_inputs(schedule, in);
    schedule->add_option("--setup", setup, "i: DA only; ii: DA and ID (perfect ID foresight); iii: two-stage")
        ->check(CLI::IsMember({"i", "ii", "iii"}))
        ->capture_default_str();
    schedule->add_option("--plant", plant, "plant parameter JSON (defaults when absent)");
    schedule->add_option("--scenario", scenario, "scenario source, see benchmark --help")->capture_default_str();
    schedule->add_flag("--dump-lp", dump_lp, "also write the first day's LP as text");
    add_common(schedule);

    std::string scenarios = "nominal";
    auto* bench = app.add_subcommand("benchmark", "WDC of scenario sources against the full year");
    add_inputs(bench, in);
    bench->add_option("--setup", setup, "i | ii | iii")->check(CLI::IsMember({"i", "ii", "iii"}))->capture_default_str();
    bench->add_option("--plant", plant, "plant parameter JSON (defaults when absent)");
    bench->add_option("--scenarios", scenarios,
                      "comma-separated sources: fullyear, unscaled, nominal, extreme[:F], manual:B:G, "
                      "week-<mode>, or ALGO:CRIT[:K] (e.g. kmedoids:b, hier-c:a:4)")
        ->capture_default_str();
    bench->add_option("--k-max", k_max, "largest k tried by the elbow method")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    add_common(bench);

    std::string spec_path;
    std::string fixture = "synth2023";
    auto* synth_cmd = app.add_subcommand("synth", "write a deterministic synthetic price year");
    synth_cmd->add_option("--spec", spec_path, "year spec JSON (overrides --fixture)");
    synth_cmd->add_option("--fixture", fixture, "named fixture")->capture_default_str();
    synth_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ingest->parsed()) {
            cmd_ingest(in, out_dir, out);
        } else if (profile_cmd->parsed()) {
            cmd_profile(horizon, in, scaling, repeat, format, out_dir, out);
        } else if (stats_cmd->parsed()) {
            cmd_stats(in, out_dir, out);
        } else if (match->parsed()) {
            cmd_match(horizon, in, scaling, scope, format, out_dir, out);
        } else if (cluster->parsed()) {
            cmd_cluster(in, criterion, algo, k_text, k_max, format, out_dir, out);
        } else if (schedule->parsed()) {
            cmd_schedule(in, setup, plant, scenario, dump_lp, format, out_dir, out);
        } else if (bench->parsed()) {
            cmd_benchmark(in, setup, plant, scenarios, k_max, format, out_dir, out);
        } else if (synth_cmd->parsed()) {
            cmd_synth(spec_path, fixture, out_dir, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

}  // namespace priceforge::cli
