#include <doctest.h>

#include <cstring>
#include <sstream>

#include "oracles.hpp"
#include "priceforge/error.hpp"
#include "priceforge/lp.hpp"

using namespace priceforge;
using namespace priceforge::lp;
using doctest::Approx;

TEST_CASE("single bound") {
    LpProblem p;
    p.add_variable("x", -kInfinity, kInfinity, 1.0);
    p.add_range({{0, 1.0}}, 3.0, kInfinity);
    const auto s = solve_lp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.x[0] == Approx(3.0));
    CHECK(s.objective == Approx(3.0));
}

TEST_CASE("contradictory bounds are infeasible") {
    LpProblem p;
    p.add_variable("x", -kInfinity, kInfinity, -1.0);
    p.add_inequality({{0, 1.0}}, 0.0);
    p.add_range({{0, 1.0}}, 1.0, kInfinity);
    CHECK(solve_lp(p).status == Status::Infeasible);
}

TEST_CASE("unbounded ray") {
    LpProblem p;
    p.add_variable("x", 0.0, kInfinity, -1.0);
    p.add_variable("y", 0.0, kInfinity, 0.0);
    p.add_inequality({{0, 1.0}, {1, -1.0}}, 1.0);
    CHECK(solve_lp(p).status == Status::Unbounded);
}

TEST_CASE("Beale example does not cycle") {
    LpProblem p;
    p.add_variable("x4", 0, kInfinity, -0.75);
    p.add_variable("x5", 0, kInfinity, 20);
    p.add_variable("x6", 0, kInfinity, -0.5);
    p.add_variable("x7", 0, kInfinity, 6);
    p.add_inequality({{0, 0.25}, {1, -8}, {2, -1}, {3, 9}}, 0);
    p.add_inequality({{0, 0.5}, {1, -12}, {2, -0.5}, {3, 3}}, 0);
    p.add_inequality({{2, 1}}, 1);
    const auto s = solve_lp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == Approx(-1.25).epsilon(1e-12));
}

TEST_CASE("fixture suite matches vertex enumeration") {
    const auto suite = pftest::lp_fixture_suite();
    std::size_t infeasible = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        CAPTURE(i);
        const auto& p = suite[i];
        REQUIRE(p.num_variables() <= 6);
        REQUIRE(p.num_rows() <= 6);
        const auto oracle = pftest::vertex_enumeration(p);
        const auto s = solve_lp(p);
        if (!oracle) {
            ++infeasible;
            CHECK(s.status == Status::Infeasible);
            continue;
        }
        REQUIRE(s.status == Status::Optimal);
        CHECK(std::abs(s.objective - *oracle) <= 1e-9 * std::max(1.0, std::abs(*oracle)));
        const auto r = check_solution(p, s.x);
        CHECK(r.max_bound_violation <= 1e-9);
        CHECK(r.max_equality_residual <= 1e-9);
        CHECK(r.max_inequality_violation <= 1e-9);
    }
    CHECK(infeasible >= 2);
}

TEST_CASE("no sampled feasible point beats the optimum") {
    std::mt19937 gen(7u);
    std::size_t walks = 0;
    for (const auto& p : pftest::lp_fixture_suite()) {
        const auto s = solve_lp(p);
        if (s.status != Status::Optimal) continue;
        const auto points = pftest::sample_feasible(p, s.x, 1000, gen);
        walks += !points.empty();
        for (const auto& x : points) {
            double obj = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) obj += p.cost[j] * x[j];
            CHECK(s.objective <= obj + 1e-9 * (1.0 + std::abs(obj)));
        }
    }
    CHECK(walks >= 10);
}

TEST_CASE("solutions are bit-identical across calls") {
    for (const auto& p : pftest::lp_fixture_suite()) {
        const auto a = solve_lp(p);
        const auto b = solve_lp(p);
        CHECK(a.status == b.status);
        REQUIRE(a.x.size() == b.x.size());
        CHECK(std::memcmp(a.x.data(), b.x.data(), a.x.size() * sizeof(double)) == 0);
        CHECK(a.iterations == b.iterations);
    }
}

TEST_CASE("residual report") {
    LpProblem p;
    p.add_variable("x", 0, 1, 0);
    p.add_variable("y", 0, 10, 0);
    p.add_equality({{0, 1}, {1, 1}}, 3);
    p.add_inequality({{1, 1}}, 2);
    const auto ok = check_solution(p, std::vector<double>{1.0, 2.0});
    CHECK(ok.max_bound_violation == 0.0);
    CHECK(ok.max_equality_residual == 0.0);
    CHECK(ok.max_inequality_violation == 0.0);
    const auto bad = check_solution(p, std::vector<double>{1.5, 1.5});
    CHECK(bad.max_bound_violation == Approx(0.5));
    CHECK(bad.max_equality_residual == 0.0);
    const auto off = check_solution(p, std::vector<double>{1.0, 2.5});
    CHECK(off.max_equality_residual == Approx(0.5));
    CHECK(off.max_inequality_violation == Approx(0.5));
    try {
        check_solution(p, std::vector<double>{1.0});
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("problem validation") {
    LpProblem p;
    p.add_variable("x", 2, 1, 0);
    CHECK_THROWS_AS(p.validate(), Error);
    LpProblem q;
    q.add_variable("x", 0, 1, 0);
    q.add_inequality({{3, 1.0}}, 1.0);
    CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("LP text dump") {
    LpProblem p;
    p.add_variable("x", 0, 4, 1.5);
    p.add_variable("y", -kInfinity, kInfinity, -2);
    p.add_equality({{0, 1}, {1, 1}}, 3, "sum");
    p.add_range({{0, 1}, {1, -1}}, -1, 1, "gap");
    std::ostringstream os;
    write_lp_text(os, p);
    const std::string text = os.str();
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("sum:") != std::string::npos);
    CHECK(text.find("gap_lo:") != std::string::npos);
    CHECK(text.find("gap_hi:") != std::string::npos);
    CHECK(text.find("y free") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}
