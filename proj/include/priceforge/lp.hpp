#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace priceforge::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Term {
    std::size_t var;
    double coef;
};

/// lower <= sum(coef * x[var]) <= upper. Equalities have lower == upper,
/// one-sided inequalities an infinite side.
struct Row {
    std::vector<Term> terms;
    double lower = -kInfinity;
    double upper = kInfinity;
    std::string name;

    bool is_equality() const { return lower == upper; }
};

/// minimize cost . x subject to the rows and per-variable bounds.
struct LpProblem {
    std::vector<double> cost;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::string> names;
    std::vector<Row> rows;

    std::size_t add_variable(std::string name, double lo, double hi, double c = 0.0);
    std::size_t add_equality(std::vector<Term> terms, double rhs, std::string name = {});
    /// terms . x <= rhs
    std::size_t add_inequality(std::vector<Term> terms, double rhs, std::string name = {});
    std::size_t add_range(std::vector<Term> terms, double lo, double hi, std::string name = {});

    std::size_t num_variables() const { return cost.size(); }
    std::size_t num_rows() const { return rows.size(); }

    /// Throws DimensionMismatch / BadSpec for inconsistent sizes, NaNs,
    /// out-of-range indices or crossed bounds.
    void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status status);

struct LpSolution {
    Status status = Status::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    std::size_t iterations = 0;
};

struct SolverOptions {
    double feasibility_tol = 1e-8;
    double optimality_tol = 1e-9;
    /// 0 picks 50 * (rows + columns).
    std::size_t max_iterations = 0;
};

/// Bounded-variable primal simplex on a dense tableau. Dantzig pricing with
/// lowest-index ties; switches to Bland's rule after 10 * (m + n) consecutive
/// degenerate pivots. Infeasible / Unbounded are statuses, not errors.
/// Throws NumericalFailure when the final basis cannot meet the tolerances.
LpSolution solve_lp(const LpProblem& problem, const SolverOptions& options = {});

struct ResidualReport {
    double max_equality_residual = 0.0;
    double max_inequality_violation = 0.0;
    double max_bound_violation = 0.0;
};

ResidualReport check_solution(const LpProblem& problem, std::span<const double> x);

/// Largest finite row bound magnitude (the ||b|| used to scale tolerances).
double rhs_norm(const LpProblem& problem);

/// CPLEX-style LP text with 12 significant digits. Ranged rows are split into
/// `<name>_lo` / `<name>_hi`.
void write_lp_text(std::ostream& os, const LpProblem& problem);

}  // namespace priceforge::lp
