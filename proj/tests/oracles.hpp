#pragma once

// Brute-force references for the LP solver and the daily schedule.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "priceforge/lp.hpp"
#include "priceforge/scheduling.hpp"

namespace pftest {

struct HalfSpace {
    std::vector<double> a;  // a . x <= b
    double b = 0.0;
};

inline std::vector<HalfSpace> half_spaces(const priceforge::lp::LpProblem& p) {
    const std::size_t n = p.num_variables();
    std::vector<HalfSpace> out;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        if (std::isfinite(p.upper[j])) out.push_back({e, p.upper[j]});
        e[j] = -1.0;
        if (std::isfinite(p.lower[j])) out.push_back({e, -p.lower[j]});
    }
    for (const auto& row : p.rows) {
        std::vector<double> a(n, 0.0);
        for (const auto& t : row.terms) a[t.var] += t.coef;
        if (std::isfinite(row.upper)) out.push_back({a, row.upper});
        if (std::isfinite(row.lower)) {
            for (double& v : a) v = -v;
            out.push_back({a, -row.lower});
        }
    }
    return out;
}

inline bool feasible_point(const priceforge::lp::LpProblem& p, const std::vector<double>& x, double tol) {
    for (const auto& h : half_spaces(p)) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += h.a[j] * x[j];
        if (lhs > h.b + tol * (1.0 + std::abs(h.b))) return false;
    }
    return true;
}

// Minimum objective over all basic feasible solutions; nullopt when none exists.
// Only meaningful for bounded feasible regions.
inline std::optional<double> vertex_enumeration(const priceforge::lp::LpProblem& p) {
    const auto hs = half_spaces(p);
    const std::size_t n = p.num_variables();
    const std::size_t m = hs.size();
    if (m < n) return std::nullopt;
    std::optional<double> best;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    while (true) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) A(r, c) = hs[pick[r]].a[c];
            b(r) = hs[pick[r]].b;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() == static_cast<Eigen::Index>(n)) {
            const Eigen::VectorXd x = lu.solve(b);
            std::vector<double> xv(x.data(), x.data() + n);
            if (feasible_point(p, xv, 1e-9)) {
                double obj = 0.0;
                for (std::size_t j = 0; j < n; ++j) obj += p.cost[j] * xv[j];
                if (!best || obj < *best) best = obj;
            }
        }
        // next combination
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
    }
    return best;
}

// Hit-and-run walk from a feasible start, restricted to the null space of the equality rows.
// Returns up to `count` feasible points; empty when the region is a single point.
inline std::vector<std::vector<double>> sample_feasible(const priceforge::lp::LpProblem& p,
                                                        const std::vector<double>& start, std::size_t count,
                                                        std::mt19937& gen) {
    const std::size_t n = p.num_variables();
    std::vector<std::vector<double>> eq;
    for (const auto& row : p.rows) {
        if (!row.is_equality()) continue;
        std::vector<double> a(n, 0.0);
        for (const auto& t : row.terms) a[t.var] += t.coef;
        eq.push_back(a);
    }
    Eigen::MatrixXd basis;
    if (eq.empty()) {
        basis = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    } else {
        Eigen::MatrixXd A(static_cast<Eigen::Index>(eq.size()), static_cast<Eigen::Index>(n));
        for (std::size_t r = 0; r < eq.size(); ++r) {
            for (std::size_t c = 0; c < n; ++c) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = eq[r][c];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() == static_cast<Eigen::Index>(n)) return {};
        basis = lu.kernel();
    }
    std::vector<HalfSpace> ineq;
    for (auto& h : half_spaces(p)) ineq.push_back(std::move(h));
    const auto unit = [&] { return static_cast<double>(gen()) / 4294967296.0; };

    std::vector<std::vector<double>> out;
    std::vector<double> x = start;
    for (std::size_t draw = 0; draw < 4 * count && out.size() < count; ++draw) {
        Eigen::VectorXd r(basis.cols());
        for (Eigen::Index k = 0; k < r.size(); ++k) r(k) = 2.0 * unit() - 1.0;
        const Eigen::VectorXd d = basis * r;
        // feasible step interval [t_lo, t_hi] along d
        double t_lo = -1e6, t_hi = 1e6;
        for (const auto& h : ineq) {
            double ad = 0.0, ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                ad += h.a[j] * d(static_cast<Eigen::Index>(j));
                ax += h.a[j] * x[j];
            }
            const double slack = std::max(0.0, h.b - ax);
            if (ad > 1e-12) t_hi = std::min(t_hi, slack / ad);
            if (ad < -1e-12) t_lo = std::max(t_lo, slack / ad);
        }
        if (!(t_hi > t_lo)) continue;
        const double t = t_lo + (t_hi - t_lo) * (0.001 + 0.998 * unit());
        std::vector<double> y(n);
        for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + t * d(static_cast<Eigen::Index>(j));
        if (!feasible_point(p, y, 1e-9)) continue;
        out.push_back(y);
        x = y;
    }
    return out;
}

// Boxed LPs with <= 6 variables and <= 6 rows.  Integer data keeps vertices exact.
inline std::vector<priceforge::lp::LpProblem> lp_fixture_suite() {
    using namespace priceforge::lp;
    std::vector<LpProblem> out;

    {  // 3 variables, 2 constraints
        LpProblem p;
        p.add_variable("x1", 0, 10, -2);
        p.add_variable("x2", 0, 10, -3);
        p.add_variable("x3", 0, 10, 1);
        p.add_inequality({{0, 1}, {1, 2}, {2, 1}}, 14);
        p.add_inequality({{0, 3}, {1, 1}, {2, -1}}, 12);
        out.push_back(p);
    }
    {  // equality plus range row, negative bounds
        LpProblem p;
        p.add_variable("a", -4, 4, 1);
        p.add_variable("b", -4, 4, -1);
        p.add_variable("c", -2, 6, 0.5);
        p.add_equality({{0, 1}, {1, 1}, {2, 1}}, 2);
        p.add_range({{0, 1}, {1, -2}}, -3, 5);
        out.push_back(p);
    }
    {  // degenerate vertex: three constraints through one point
        LpProblem p;
        p.add_variable("x", 0, 5, -1);
        p.add_variable("y", 0, 5, -1);
        p.add_inequality({{0, 1}, {1, 1}}, 4);
        p.add_inequality({{0, 1}, {1, -1}}, 0);
        p.add_inequality({{0, 2}, {1, 1}}, 6);
        out.push_back(p);
    }
    {  // Beale's cycling example, boxed so the oracle applies
        LpProblem p;
        p.add_variable("x4", 0, 100, -0.75);
        p.add_variable("x5", 0, 100, 20);
        p.add_variable("x6", 0, 100, -0.5);
        p.add_variable("x7", 0, 100, 6);
        p.add_inequality({{0, 0.25}, {1, -8}, {2, -1}, {3, 9}}, 0);
        p.add_inequality({{0, 0.5}, {1, -12}, {2, -0.5}, {3, 3}}, 0);
        p.add_inequality({{2, 1}}, 1);
        out.push_back(p);
    }
    {  // infeasible
        LpProblem p;
        p.add_variable("x", 0, 3, 1);
        p.add_variable("y", 0, 3, 1);
        p.add_range({{0, 1}, {1, 1}}, 7, 9);
        out.push_back(p);
    }
    {  // fixed variable and a >= row
        LpProblem p;
        p.add_variable("x", 2, 2, 3);
        p.add_variable("y", -1, 4, -2);
        p.add_variable("z", 0, 1, 1);
        p.add_range({{0, 1}, {1, 1}, {2, 1}}, 3.5, kInfinity);
        p.add_inequality({{1, 1}, {2, -1}}, 2.5);
        out.push_back(p);
    }

    std::mt19937 gen(20230101u);
    const auto uni = [&](int lo, int hi) { return lo + static_cast<int>(gen() % static_cast<unsigned>(hi - lo + 1)); };
    for (int trial = 0; trial < 30; ++trial) {
        LpProblem p;
        const int n = uni(2, 6);
        const int m = uni(1, 6);
        std::vector<double> x0(n);
        for (int j = 0; j < n; ++j) {
            const int lo = uni(-4, 1);
            const int hi = lo + uni(1, 6);
            p.add_variable("v" + std::to_string(j), lo, hi, uni(-5, 5));
            x0[j] = lo + 0.5 * (hi - lo);
        }
        for (int r = 0; r < m; ++r) {
            std::vector<Term> terms;
            double at = 0.0;
            for (int j = 0; j < n; ++j) {
                const int c = uni(-4, 4);
                if (c == 0) continue;
                terms.push_back({static_cast<std::size_t>(j), static_cast<double>(c)});
                at += c * x0[j];
            }
            if (terms.empty()) terms.push_back({0, 1.0}), at = x0[0];
            // every seventh row pushed away from x0 so some instances are infeasible
            const double slack = (trial % 7 == 6 && r == 0) ? -30.0 : uni(0, 3);
            switch (uni(0, 3)) {
                case 0: p.add_inequality(terms, std::floor(at) + slack); break;
                case 1: p.add_range(terms, std::ceil(at) - slack, kInfinity); break;
                case 2: p.add_range(terms, std::floor(at) - slack - 1, std::ceil(at) + slack); break;
                default: p.add_equality(terms, at + (slack < 0 ? slack : 0.0)); break;
            }
        }
        out.push_back(p);
    }
    return out;
}

// Exhaustive DP over a 0.01 MW power grid for the DA-only daily problem.
// Assumes storage moves on a 0.0025 t grid, which holds when eta * dt * 0.01 divides the step.
inline double grid_schedule_cost(const std::vector<double>& da_hours, const priceforge::scheduling::PlantParams& p,
                                 double step = 0.01) {
    const double dt = priceforge::scheduling::kIntervalHours;
    const std::size_t T = da_hours.size() * 4;
    const double hi_p = std::min(p.p_max, p.da_buy_max);
    const int n_p = static_cast<int>(std::lround((hi_p - p.p_min) / step)) + 1;
    const double ds = p.eta * dt * step;  // storage change per power step
    const int n_s = static_cast<int>(std::lround(p.storage_max / ds)) + 1;
    const int s0 = static_cast<int>(std::lround(p.storage_init / ds));
    const int ramp_steps = static_cast<int>(std::floor(p.ramp / step + 1e-9));
    // storage offset from one interval at power index i
    const auto s_delta = [&](int i) {
        const double power = p.p_min + i * step;
        return static_cast<int>(std::lround((p.eta * power - p.demand_rate) * dt / ds));
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(static_cast<std::size_t>(n_p) * n_s, inf), next(cost.size(), inf);
    const auto at = [&](int i, int s) { return static_cast<std::size_t>(i) * n_s + s; };
    for (int i = 0; i < n_p; ++i) {
        const int s = s0 + s_delta(i);
        if (s >= 0 && s < n_s) cost[at(i, s)] = da_hours[0] * (p.p_min + i * step) * dt;
    }
    for (std::size_t t = 1; t < T; ++t) {
        std::fill(next.begin(), next.end(), inf);
        const double price = da_hours[t / 4];
        for (int i = 0; i < n_p; ++i) {
            for (int s = 0; s < n_s; ++s) {
                const double c = cost[at(i, s)];
                if (c == inf) continue;
                for (int j = std::max(0, i - ramp_steps); j <= std::min(n_p - 1, i + ramp_steps); ++j) {
                    const int s2 = s + s_delta(j);
                    if (s2 < 0 || s2 >= n_s) continue;
                    const double v = c + price * (p.p_min + j * step) * dt;
                    if (v < next[at(j, s2)]) next[at(j, s2)] = v;
                }
            }
        }
        cost.swap(next);
    }
    double best = inf;
    for (int i = 0; i < n_p; ++i) best = std::min(best, cost[at(i, s0)]);
    return best;
}

// Two hours, cheap then expensive; storage is the binding resource.
inline priceforge::scheduling::PlantParams toy_plant() {
    priceforge::scheduling::PlantParams p;
    p.p_min = 0.0;
    p.p_max = 2.0;
    p.ramp = 0.5;
    p.eta = 1.0;
    p.storage_max = 0.5;
    p.storage_init = 0.25;
    p.demand_rate = 1.0;
    p.da_buy_max = 2.0;
    return p;
}

}  // namespace pftest
