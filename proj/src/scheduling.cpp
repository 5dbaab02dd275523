#include "priceforge/scheduling.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>

#include "priceforge/error.hpp"

namespace priceforge::scheduling {

void PlantParams::validate() const {
    const double steady = demand_rate / eta;
    const auto fail = [](const std::string& what) { throw Error(ErrorCode::InfeasibleSchedule, what); };
    if (!(eta > 0.0)) {
        fail("eta must be positive");
    }
    if (!(ramp > 0.0)) {
        fail("ramp must be positive");
    }
    if (!(p_min >= 0.0) || !(p_min <= p_max)) {
        fail("power bounds must satisfy 0 <= p_min <= p_max");
    }
    if (!(storage_max >= 0.0) || !(storage_init >= 0.0) || !(storage_init <= storage_max)) {
        fail("storage_init must lie in [0, storage_max]");
    }
    if (!(demand_rate >= 0.0) || steady < p_min || steady > p_max || steady > da_buy_max) {
        fail("steady-state power demand_rate/eta must lie in [p_min, min(p_max, da_buy_max)]");
    }
}

PlantParams parse_plant_params(std::istream& is) {
    PlantParams p;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("plant config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::BadConfig, "plant config must be a JSON object");
    }
    const std::pair<const char*, double*> fields[] = {
        {"p_min", &p.p_min},
        {"p_max", &p.p_max},
        {"ramp", &p.ramp},
        {"eta", &p.eta},
        {"storage_max", &p.storage_max},
        {"storage_init", &p.storage_init},
        {"demand_rate", &p.demand_rate},
        {"da_buy_max", &p.da_buy_max},
    };
    for (const auto& [key, value] : doc.items()) {
        const auto* field = std::find_if(std::begin(fields), std::end(fields),
                                         [&](const auto& f) { return key == f.first; });
        if (field == std::end(fields)) {
            throw Error(ErrorCode::BadConfig, "unknown plant parameter '" + key + "'");
        }
        if (!value.is_number()) {
            throw Error(ErrorCode::BadConfig, "plant parameter '" + key + "' must be a number");
        }
        *field->second = value.get<double>();
    }
    return p;
}

std::string plant_params_json(const PlantParams& p) {
    nlohmann::ordered_json doc;
    doc["p_min"] = p.p_min;
    doc["p_max"] = p.p_max;
    doc["ramp"] = p.ramp;
    doc["eta"] = p.eta;
    doc["storage_max"] = p.storage_max;
    doc["storage_init"] = p.storage_init;
    doc["demand_rate"] = p.demand_rate;
    doc["da_buy_max"] = p.da_buy_max;
    return doc.dump(2);
}

std::string_view to_string(Setup setup) {
    switch (setup) {
        case Setup::I: return "i";
        case Setup::II: return "ii";
        case Setup::III: return "iii";
    }
    return "?";
}

std::optional<Setup> parse_setup(std::string_view text) {
    for (Setup s : {Setup::I, Setup::II, Setup::III}) {
        if (text == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

std::string_view describe(Setup setup) {
    switch (setup) {
        case Setup::I: return "DA only";
        case Setup::II: return "DA and ID simultaneously (perfect ID foresight)";
        case Setup::III: return "two-stage: DA first, then ID with DA fixed";
    }
    return "?";
}

double ScheduleResult::average_daily_cost() const {
    return daily_cost.empty() ? 0.0 : objective / static_cast<double>(daily_cost.size());
}

namespace {

using lp::kInfinity;
using lp::Term;

// Appends one day (intervals t0 .. t0 + T - 1) to `out`.
void append_day(DayProblem& out, std::span<const double> da_hours, std::span<const double> id_quarters,
                const PlantParams& p, Stage stage, std::span<const double> fixed_da, std::size_t t0) {
    lp::LpProblem& lp = out.problem;
    const std::size_t n = da_hours.size() * 4;
    const double dt = kIntervalHours;
    const auto label = [&](const char* prefix, std::size_t t) { return prefix + std::to_string(t0 + t + 1); };

    std::vector<std::size_t> da(n), id(n), s(n);
    for (std::size_t t = 0; t < n; ++t) {
        switch (stage) {
            case Stage::DaOnly:
                da[t] = lp.add_variable(label("pda_", t), p.p_min, std::min(p.da_buy_max, p.p_max),
                                        da_hours[t / 4] * dt);
                break;
            case Stage::Simultaneous:
                da[t] = lp.add_variable(label("pda_", t), 0.0, p.da_buy_max, da_hours[t / 4] * dt);
                id[t] = lp.add_variable(label("pid_", t), -p.p_max, p.da_buy_max, id_quarters[t] * dt);
                break;
            case Stage::IdRecourse: {
                const double lo = std::max(-p.p_max, p.p_min - fixed_da[t]);
                const double hi = std::min(p.da_buy_max, p.p_max - fixed_da[t]);
                if (lo > hi) {
                    throw Error(ErrorCode::InfeasibleSchedule,
                                "fixed DA volume at interval " + std::to_string(t0 + t + 1) + " leaves no ID range");
                }
                id[t] = lp.add_variable(label("pid_", t), lo, hi, id_quarters[t] * dt);
                break;
            }
        }
        const bool last = t + 1 == n;
        s[t] = lp.add_variable(label("s_", t), last ? p.storage_init : 0.0,
                               last ? p.storage_init : p.storage_max);
    }

    // Total plant power at t, as terms plus a constant (fixed DA volume).
    const auto power = [&](std::size_t t, double scale, std::vector<Term>& terms) {
        double constant = 0.0;
        switch (stage) {
            case Stage::DaOnly: terms.push_back({da[t], scale}); break;
            case Stage::Simultaneous:
                terms.push_back({da[t], scale});
                terms.push_back({id[t], scale});
                break;
            case Stage::IdRecourse:
                terms.push_back({id[t], scale});
                constant = scale * fixed_da[t];
                break;
        }
        return constant;
    };

    for (std::size_t t = 0; t < n; ++t) {
        // S_t - S_{t-1} - eta * dt * P_t = -demand * dt
        std::vector<Term> terms{{s[t], 1.0}};
        double rhs = -p.demand_rate * dt;
        if (t == 0) {
            rhs += p.storage_init;
        } else {
            terms.push_back({s[t - 1], -1.0});
        }
        rhs -= power(t, -p.eta * dt, terms);
        lp.add_equality(std::move(terms), rhs, label("balance_", t));

        if (stage == Stage::Simultaneous) {
            std::vector<Term> total;
            power(t, 1.0, total);
            lp.add_range(std::move(total), p.p_min, p.p_max, label("power_", t));
        }
        if (t > 0) {
            std::vector<Term> step;
            double shift = power(t, 1.0, step);
            shift += power(t - 1, -1.0, step);
            lp.add_range(std::move(step), -p.ramp - shift, p.ramp - shift, label("ramp_", t));
        }
    }

    if (stage != Stage::IdRecourse) {
        out.p_da.insert(out.p_da.end(), da.begin(), da.end());
    }
    if (stage != Stage::DaOnly) {
        out.p_id.insert(out.p_id.end(), id.begin(), id.end());
    }
    out.storage.insert(out.storage.end(), s.begin(), s.end());
}

void check_prices(std::span<const double> prices, const char* what) {
    for (double v : prices) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::BadSpec, std::string("non-finite ") + what + " price");
        }
    }
}

std::vector<double> solve_stage(const DayProblem& day, std::size_t& iterations, std::size_t day_index) {
    const lp::LpSolution sol = lp::solve_lp(day.problem);
    iterations += sol.iterations;
    if (sol.status != lp::Status::Optimal) {
        throw Error(ErrorCode::InfeasibleSchedule, "day " + std::to_string(day_index + 1) + " LP is " +
                                                       std::string(lp::to_string(sol.status)));
    }
    return sol.x;
}

struct DayOutcome {
    std::vector<double> p_da, p_id, storage;
    std::size_t iterations = 0;
};

DayOutcome solve_day(std::span<const double> da, std::span<const double> id, const PlantParams& params, Setup setup,
                     std::size_t day_index) {
    DayOutcome out;
    const std::size_t n = da.size() * 4;
    const Stage first = setup == Setup::II ? Stage::Simultaneous : Stage::DaOnly;
    const DayProblem problem = build_day_problem(da, id, params, first);
    const std::vector<double> x = solve_stage(problem, out.iterations, day_index);
    out.p_da.resize(n);
    out.p_id.assign(n, 0.0);
    out.storage.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        out.p_da[t] = x[problem.p_da[t]];
        out.storage[t] = x[problem.storage[t]];
        if (setup == Setup::II) {
            out.p_id[t] = x[problem.p_id[t]];
        }
    }
    if (setup == Setup::III) {
        const DayProblem recourse = build_day_problem(da, id, params, Stage::IdRecourse, out.p_da);
        const std::vector<double> y = solve_stage(recourse, out.iterations, day_index);
        for (std::size_t t = 0; t < n; ++t) {
            out.p_id[t] = y[recourse.p_id[t]];
            out.storage[t] = y[recourse.storage[t]];
        }
    }
    return out;
}

}  // namespace

DayProblem build_day_problem(std::span<const double> da_hours, std::span<const double> id_quarters,
                             const PlantParams& params, Stage stage, std::span<const double> fixed_da) {
    params.validate();
    const std::size_t n = da_hours.size() * 4;
    if (n == 0) {
        throw Error(ErrorCode::EmptyInput, "no prices to schedule");
    }
    if (stage != Stage::DaOnly && id_quarters.size() != n) {
        throw Error(id_quarters.empty() ? ErrorCode::MissingIdPrices : ErrorCode::DimensionMismatch,
                    "ID prices must cover every interval of the day");
    }
    if (stage == Stage::IdRecourse && fixed_da.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "fixed DA volumes must cover every interval of the day");
    }
    DayProblem out;
    append_day(out, da_hours, id_quarters, params, stage, fixed_da, 0);
    return out;
}

DayProblem build_horizon_problem(std::span<const double> da, std::span<const double> id, const PlantParams& params,
                                 Stage stage, std::size_t intervals_per_day) {
    params.validate();
    if (stage == Stage::IdRecourse) {
        throw Error(ErrorCode::BadSpec, "horizon problems cover the single-stage setups only");
    }
    const std::size_t hours = intervals_per_day / 4;
    if (intervals_per_day == 0 || intervals_per_day % 4 != 0 || da.empty() || da.size() % hours != 0) {
        throw Error(ErrorCode::DimensionMismatch, "DA prices must cover whole days");
    }
    const std::size_t days = da.size() / hours;
    if (stage == Stage::Simultaneous && id.size() != days * intervals_per_day) {
        throw Error(id.empty() ? ErrorCode::MissingIdPrices : ErrorCode::DimensionMismatch,
                    "ID prices must cover every interval");
    }
    DayProblem out;
    for (std::size_t d = 0; d < days; ++d) {
        const auto id_day = stage == Stage::Simultaneous ? id.subspan(d * intervals_per_day, intervals_per_day)
                                                         : std::span<const double>{};
        append_day(out, da.subspan(d * hours, hours), id_day, params, stage, {}, d * intervals_per_day);
    }
    return out;
}

ScheduleResult schedule(std::span<const double> da, std::span<const double> id, const PlantParams& params,
                        Setup setup, const ScheduleOptions& options) {
    params.validate();
    const std::size_t ipd = options.intervals_per_day;
    if (ipd == 0 || ipd % 4 != 0) {
        throw Error(ErrorCode::BadSpec, "intervals per day must be a positive multiple of 4");
    }
    const std::size_t hours = ipd / 4;
    if (da.empty() || da.size() % hours != 0) {
        throw Error(ErrorCode::DimensionMismatch, "DA prices must cover whole days (" + std::to_string(hours) +
                                                      " hours each), got " + std::to_string(da.size()));
    }
    const std::size_t days = da.size() / hours;
    const std::size_t n = days * ipd;
    if (setup != Setup::I) {
        if (id.empty()) {
            throw Error(ErrorCode::MissingIdPrices, "setups ii and iii need quarter-hourly ID prices");
        }
        if (id.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "ID prices cover " + std::to_string(id.size()) +
                                                          " intervals, DA covers " + std::to_string(n));
        }
        check_prices(id, "ID");
    }
    check_prices(da, "DA");

    std::vector<DayOutcome> outcomes(days);
    std::vector<std::exception_ptr> failures(days);
    const auto run_day = [&](std::size_t d) {
        try {
            const auto id_day = setup == Setup::I ? std::span<const double>{} : id.subspan(d * ipd, ipd);
            outcomes[d] = solve_day(da.subspan(d * hours, hours), id_day, params, setup, d);
        } catch (...) {
            failures[d] = std::current_exception();
        }
    };
    if (options.parallel) {
        const auto count = static_cast<std::ptrdiff_t>(days);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t d = 0; d < count; ++d) {
            run_day(static_cast<std::size_t>(d));
        }
    } else {
        for (std::size_t d = 0; d < days; ++d) {
            run_day(d);
        }
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    ScheduleResult out;
    out.setup = setup;
    out.p_da.reserve(n);
    out.p_id.reserve(n);
    out.storage.reserve(n);
    out.production.reserve(n);
    out.interval_cost.reserve(n);
    for (std::size_t d = 0; d < days; ++d) {
        const DayOutcome& day = outcomes[d];
        double cost = 0.0;
        for (std::size_t t = 0; t < ipd; ++t) {
            const std::size_t g = d * ipd + t;
            const double phi = da[g / 4] * day.p_da[t] + (setup == Setup::I ? 0.0 : id[g] * day.p_id[t]);
            out.interval_cost.push_back(phi * kIntervalHours);
            cost += phi * kIntervalHours;
            out.p_da.push_back(day.p_da[t]);
            out.p_id.push_back(day.p_id[t]);
            out.storage.push_back(day.storage[t]);
            out.production.push_back(params.eta * (day.p_da[t] + day.p_id[t]));
        }
        out.daily_cost.push_back(cost);
        out.objective += cost;
        out.lp_iterations += day.iterations;
    }
    return out;
}

double wdc(std::span<const WeightedCost> costs) {
    if (costs.empty()) {
        throw Error(ErrorCode::BadWeights, "no scenarios to weight");
    }
    double total_weight = 0.0;
    double value = 0.0;
    for (const WeightedCost& c : costs) {
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
            throw Error(ErrorCode::BadWeights, "scenario weights must be non-negative");
        }
        total_weight += c.weight;
        value += c.weight * c.average_daily_cost;
    }
    if (std::abs(total_weight - 1.0) > 1e-9) {
        throw Error(ErrorCode::BadWeights, "scenario weights sum to " + std::to_string(total_weight) + ", not 1");
    }
    return value;
}

void write_schedule_csv(std::ostream& os, const ScheduleResult& result) {
    os << "t,p_da_mw,p_id_mw,m_tph,s_t\n";
    char buf[160];
    for (std::size_t t = 0; t < result.p_da.size(); ++t) {
        // Values that round to zero print as 0.000000, never -0.000000.
        const auto z = [](double v) { return std::abs(v) < 5e-7 ? 0.0 : v; };
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f,%.6f\n", t + 1, z(result.p_da[t]), z(result.p_id[t]),
                      z(result.production[t]), z(result.storage[t]));
        os << buf;
    }
}

}  // namespace priceforge::scheduling
