#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "priceforge/clustering.hpp"
#include "priceforge/benchmark.hpp"
#include "priceforge/error.hpp"
#include "priceforge/scheduling.hpp"
#include "support.hpp"

using namespace priceforge;
using namespace priceforge::scheduling;
using doctest::Approx;

namespace {

void check_result_invariants(const ScheduleResult& r, const PlantParams& p, std::size_t ipd) {
    const double tol = 1e-7;
    const std::size_t n = r.p_da.size();
    REQUIRE(n == r.days() * ipd);
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double power = r.p_da[t] + r.p_id[t];
        CHECK(power >= p.p_min - tol);
        CHECK(power <= p.p_max + tol);
        CHECK(r.p_da[t] >= -tol);
        CHECK(r.p_da[t] <= p.da_buy_max + tol);
        CHECK(r.storage[t] >= -tol);
        CHECK(r.storage[t] <= p.storage_max + tol);
        const double prev = t % ipd == 0 ? p.storage_init : r.storage[t - 1];
        CHECK(std::abs(r.storage[t] - prev - (p.eta * power - p.demand_rate) * kIntervalHours) <= tol);
        if (t % ipd != 0) {
            CHECK(std::abs(power - r.p_da[t - 1] - r.p_id[t - 1]) <= p.ramp + tol);
        }
        if ((t + 1) % ipd == 0) CHECK(std::abs(r.storage[t] - p.storage_init) <= tol);
        CHECK(r.production[t] == Approx(p.eta * power));
        total += r.interval_cost[t];
    }
    CHECK(total == Approx(r.objective).epsilon(1e-12));
}

std::vector<double> quarters_of(const std::vector<double>& da) {
    return pftest::replicate(da);
}

}  // namespace

TEST_CASE("constant price costs the daily energy") {
    const PlantParams p;
    for (double c : {0.0, 42.5, -10.0}) {
        const std::vector<double> da(24 * 3, c);
        const auto r = schedule(da, {}, p, Setup::I);
        for (double d : r.daily_cost) CHECK(d == Approx(c * p.demand_rate / p.eta * 24.0).epsilon(1e-9).scale(1.0));
        check_result_invariants(r, p, 96);
    }
}

TEST_CASE("T = 8 toy matches the grid oracle") {
    const auto plant = pftest::toy_plant();
    ScheduleOptions opt;
    opt.intervals_per_day = 8;
    for (const std::vector<double> da : {std::vector<double>{10, 50}, std::vector<double>{30, 10},
                                         std::vector<double>{20, 20}, std::vector<double>{-5, 12}}) {
        const auto r = schedule(da, {}, plant, Setup::I, opt);
        CHECK(std::abs(r.objective - pftest::grid_schedule_cost(da, plant)) <= 1e-6);
        check_result_invariants(r, plant, 8);
    }
    // cheap first: fill storage early
    const auto early = schedule(std::vector<double>{10, 50}, {}, plant, Setup::I, opt);
    CHECK(early.p_da[0] + early.p_da[1] + early.p_da[2] + early.p_da[3] > 4.0 + 1e-6);
}

TEST_CASE("ID equal to DA adds nothing in setup iii") {
    const auto series = pftest::small_year(5);
    const auto id = quarters_of(series.da);
    const PlantParams p;
    const auto one = schedule(series.da, id, p, Setup::I);
    const auto three = schedule(series.da, id, p, Setup::III);
    CHECK(pftest::rel_diff(one.objective, three.objective) <= 1e-9);
    check_result_invariants(three, p, 96);
}

TEST_CASE("relaxation chain") {
    const auto series = pftest::small_year(6, 100);
    for (const PlantParams& p : {PlantParams{}, pftest::toy_plant()}) {
        const auto i = schedule(series.da, series.id, p, Setup::I);
        const auto ii = schedule(series.da, series.id, p, Setup::II);
        const auto iii = schedule(series.da, series.id, p, Setup::III);
        const double tol = 1e-9 * std::abs(i.objective) + 1e-6;
        CHECK(ii.objective <= iii.objective + tol);
        CHECK(iii.objective <= i.objective + tol);
        check_result_invariants(i, p, 96);
        check_result_invariants(ii, p, 96);
        check_result_invariants(iii, p, 96);
    }
}

TEST_CASE("day decomposition equals the joint horizon") {
    const auto series = pftest::small_year(5, 200);
    const PlantParams p;
    for (std::size_t days = 1; days <= 5; ++days) {
        const auto da = std::span(series.da).first(24 * days);
        const auto id = std::span(series.id).first(96 * days);
        for (auto [setup, stage] : {std::pair{Setup::I, Stage::DaOnly}, std::pair{Setup::II, Stage::Simultaneous}}) {
            const auto joint = lp::solve_lp(build_horizon_problem(da, id, p, stage).problem);
            REQUIRE(joint.status == lp::Status::Optimal);
            const auto split = schedule(da, id, p, setup);
            CHECK(pftest::rel_diff(joint.objective, split.objective) <= 1e-8);
        }
    }
}

TEST_CASE("price shift adds the daily energy cost") {
    const auto series = pftest::small_year(3, 50);
    const PlantParams p;
    const auto base = schedule(series.da, {}, p, Setup::I);
    const double c = 17.0;
    std::vector<double> shifted(series.da);
    for (double& v : shifted) v += c;
    const auto moved = schedule(shifted, {}, p, Setup::I);
    const double energy = p.demand_rate / p.eta * 24.0 * 3.0;
    CHECK(std::abs(moved.objective - base.objective - c * energy) <= 1e-9 * std::abs(moved.objective) + 1e-6);
    // the old schedule is still optimal under the shifted prices
    double old_cost = 0.0;
    for (std::size_t t = 0; t < base.p_da.size(); ++t) old_cost += shifted[t / 4] * base.p_da[t] * kIntervalHours;
    CHECK(std::abs(old_cost - moved.objective) <= 1e-9 * std::abs(old_cost) + 1e-6);
}

TEST_CASE("generated day problems pass the residual check") {
    const auto series = pftest::small_year(4, 300);
    const PlantParams p;
    for (std::size_t d = 0; d < 4; ++d) {
        const auto da = std::span(series.da).subspan(24 * d, 24);
        const auto id = std::span(series.id).subspan(96 * d, 96);
        for (Stage s : {Stage::DaOnly, Stage::Simultaneous}) {
            const auto prob = build_day_problem(da, id, p, s);
            const auto sol = lp::solve_lp(prob.problem);
            REQUIRE(sol.status == lp::Status::Optimal);
            const auto r = lp::check_solution(prob.problem, sol.x);
            CHECK(r.max_equality_residual <= 1e-8);
            CHECK(r.max_inequality_violation <= 1e-8);
            CHECK(r.max_bound_violation <= 1e-8);
        }
    }
}

TEST_CASE("serial and parallel day loops agree") {
    const auto series = pftest::small_year(6, 10);
    const PlantParams p;
    ScheduleOptions serial;
    serial.parallel = false;
    const auto a = schedule(series.da, series.id, p, Setup::III, serial);
    const auto b = schedule(series.da, series.id, p, Setup::III);
    CHECK(a.p_da == b.p_da);
    CHECK(a.p_id == b.p_id);
    CHECK(a.objective == b.objective);
}

TEST_CASE("weighted daily cost") {
    const std::vector<WeightedCost> two{{100.0, 0.75}, {200.0, 0.25}};
    CHECK(wdc(two) == Approx(125.0));
    CHECK(wdc(std::vector<WeightedCost>{{321.5, 1.0}}) == 321.5);
    CHECK_THROWS_AS(wdc(std::vector<WeightedCost>{{1.0, 0.5}}), Error);
    CHECK_THROWS_AS(wdc(std::vector<WeightedCost>{{1.0, 1.5}, {1.0, -0.5}}), Error);
}

TEST_CASE("singleton clusters reproduce the full-year cost") {
    const auto series = pftest::small_year(10, 20);
    const auto days = slice_days(series);
    const PlantParams p;
    const auto full = schedule(series.da, series.id, p, Setup::I);
    const auto f = clustering::extract_features(days, clustering::Criterion::B);
    const auto sc = clustering::cluster_scenarios(clustering::kmedoids(f, days.size()), days);
    const double w = benchmark::scenario_wdc(sc, p, Setup::I);
    CHECK(pftest::rel_diff(w, full.average_daily_cost()) <= 1e-12);
}

TEST_CASE("parameter and input errors") {
    PlantParams bad;
    bad.p_min = 11.0;
    const std::vector<double> da(24, 50.0);
    try {
        schedule(da, {}, bad, Setup::I);
        FAIL("expected InfeasibleSchedule");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfeasibleSchedule);
    }
    try {
        schedule(da, {}, PlantParams{}, Setup::II);
        FAIL("expected MissingIdPrices");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingIdPrices);
    }
    CHECK_THROWS_AS(schedule(std::vector<double>(23, 1.0), {}, PlantParams{}, Setup::I), Error);

    std::istringstream good(R"({"p_max": 12, "ramp": 2})");
    const auto parsed = parse_plant_params(good);
    CHECK(parsed.p_max == 12.0);
    CHECK(parsed.ramp == 2.0);
    CHECK(parsed.p_min == 3.0);
    std::istringstream unknown(R"({"p_maxx": 12})");
    CHECK_THROWS_AS(parse_plant_params(unknown), Error);
    std::istringstream round(plant_params_json(parsed));
    CHECK(parse_plant_params(round).p_max == 12.0);
}

TEST_CASE("schedule CSV") {
    const auto r = schedule(std::vector<double>(24, 30.0), {}, PlantParams{}, Setup::I);
    std::ostringstream os;
    write_schedule_csv(os, r);
    const std::string text = os.str();
    CHECK(text.rfind("t,p_da_mw,p_id_mw,m_tph,s_t\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 97);
}
