#include "priceforge/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "priceforge/error.hpp"

namespace priceforge::lp {

std::size_t LpProblem::add_variable(std::string name, double lo, double hi, double c) {
    cost.push_back(c);
    lower.push_back(lo);
    upper.push_back(hi);
    names.push_back(std::move(name));
    return cost.size() - 1;
}

std::size_t LpProblem::add_equality(std::vector<Term> terms, double rhs, std::string name) {
    return add_range(std::move(terms), rhs, rhs, std::move(name));
}

std::size_t LpProblem::add_inequality(std::vector<Term> terms, double rhs, std::string name) {
    return add_range(std::move(terms), -kInfinity, rhs, std::move(name));
}

std::size_t LpProblem::add_range(std::vector<Term> terms, double lo, double hi, std::string name) {
    rows.push_back(Row{std::move(terms), lo, hi, std::move(name)});
    return rows.size() - 1;
}

void LpProblem::validate() const {
    const std::size_t n = cost.size();
    if (lower.size() != n || upper.size() != n || (!names.empty() && names.size() != n)) {
        throw Error(ErrorCode::DimensionMismatch, "cost, bound and name vectors differ in length");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(cost[j]) || std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
            lower[j] == kInfinity || upper[j] == -kInfinity) {
            throw Error(ErrorCode::BadSpec, "invalid cost or bounds for variable " + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        if (std::isnan(row.lower) || std::isnan(row.upper) || row.lower > row.upper ||
            row.lower == kInfinity || row.upper == -kInfinity) {
            throw Error(ErrorCode::BadSpec, "invalid bounds for row " + std::to_string(i));
        }
        for (const Term& t : row.terms) {
            if (t.var >= n) {
                throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " references variable " +
                                                              std::to_string(t.var));
            }
            if (!std::isfinite(t.coef)) {
                throw Error(ErrorCode::BadSpec, "non-finite coefficient in row " + std::to_string(i));
            }
        }
    }
}

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
    }
    return "?";
}

double rhs_norm(const LpProblem& problem) {
    double norm = 0.0;
    for (const Row& row : problem.rows) {
        if (std::isfinite(row.lower)) {
            norm = std::max(norm, std::abs(row.lower));
        }
        if (std::isfinite(row.upper)) {
            norm = std::max(norm, std::abs(row.upper));
        }
    }
    return norm;
}

ResidualReport check_solution(const LpProblem& problem, std::span<const double> x) {
    if (x.size() != problem.num_variables()) {
        throw Error(ErrorCode::DimensionMismatch, "solution has " + std::to_string(x.size()) + " entries, problem has " +
                                                      std::to_string(problem.num_variables()) + " variables");
    }
    ResidualReport report;
    for (const Row& row : problem.rows) {
        double activity = 0.0;
        for (const Term& t : row.terms) {
            activity += t.coef * x[t.var];
        }
        if (row.is_equality()) {
            report.max_equality_residual = std::max(report.max_equality_residual, std::abs(activity - row.lower));
        } else {
            const double violation = std::max({0.0, row.lower - activity, activity - row.upper});
            report.max_inequality_violation = std::max(report.max_inequality_violation, violation);
        }
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double violation = std::max({0.0, problem.lower[j] - x[j], x[j] - problem.upper[j]});
        report.max_bound_violation = std::max(report.max_bound_violation, violation);
    }
    return report;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr double kBoundTol = 1e-9;

enum class Kind : unsigned char { Structural, Logical, Artificial };
enum class State : unsigned char { Basic, AtLower, AtUpper, Free };

// Variables are ordered structural (n), logical (m, one per row), then
// artificials. Row i reads  a_i . x - s_i + sign_i * art_i = 0.
class Simplex {
public:
    Simplex(const LpProblem& problem, const SolverOptions& options)
        : problem_(problem), options_(options), n_(problem.num_variables()), m_(problem.num_rows()) {
        columns_.resize(n_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (const Term& t : problem.rows[i].terms) {
                if (t.coef != 0.0) {
                    columns_[t.var].push_back({i, t.coef});
                }
            }
        }
        feasibility_tol_ = options.feasibility_tol * (1.0 + rhs_norm(problem));
        max_iterations_ = options.max_iterations != 0 ? options.max_iterations : 50 * (m_ + n_ + 1);
        degenerate_limit_ = 10 * (m_ + n_);
    }

    LpSolution solve() {
        initialize();
        LpSolution out;
        if (has_artificials_) {
            set_phase_costs(true);
            const Status phase1 = iterate();
            double infeasibility = 0.0;
            for (std::size_t v = n_ + m_; v < x_.size(); ++v) {
                infeasibility += std::abs(x_[v]);
            }
            if (phase1 != Status::Optimal || infeasibility > feasibility_tol_) {
                out.status = Status::Infeasible;
                out.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
                out.iterations = iterations_;
                return out;
            }
            drive_out_artificials();
            for (std::size_t v = n_ + m_; v < x_.size(); ++v) {
                lb_[v] = ub_[v] = 0.0;
                if (state_[v] != State::Basic) {
                    x_[v] = 0.0;
                    state_[v] = State::AtLower;
                }
            }
            rebuild_columns();
        }
        set_phase_costs(false);
        out.status = iterate();
        out.iterations = iterations_;
        if (out.status == Status::Optimal) {
            refactor();
        }
        out.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
        for (std::size_t j = 0; j < n_; ++j) {
            out.objective += problem_.cost[j] * out.x[j];
        }
        if (out.status == Status::Optimal) {
            const ResidualReport report = check_solution(problem_, out.x);
            if (report.max_equality_residual > feasibility_tol_ || report.max_inequality_violation > feasibility_tol_ ||
                report.max_bound_violation > kBoundTol) {
                throw Error(ErrorCode::NumericalFailure,
                            "simplex solution misses tolerances (equality " +
                                std::to_string(report.max_equality_residual) + ", inequality " +
                                std::to_string(report.max_inequality_violation) + ", bound " +
                                std::to_string(report.max_bound_violation) + ")");
            }
        }
        return out;
    }

private:
    double& t(std::size_t row, std::size_t col) { return tableau_[row * width_ + col]; }

    void add_var(Kind kind, double lo, double hi, double value, State state) {
        kind_.push_back(kind);
        lb_.push_back(lo);
        ub_.push_back(hi);
        x_.push_back(value);
        state_.push_back(state);
    }

    static State resting_state(double lo, double hi) {
        if (std::isfinite(lo)) {
            return State::AtLower;
        }
        return std::isfinite(hi) ? State::AtUpper : State::Free;
    }

    static double resting_value(double lo, double hi) {
        if (std::isfinite(lo)) {
            return lo;
        }
        return std::isfinite(hi) ? hi : 0.0;
    }

    void initialize() {
        for (std::size_t j = 0; j < n_; ++j) {
            const double lo = problem_.lower[j];
            const double hi = problem_.upper[j];
            add_var(Kind::Structural, lo, hi, resting_value(lo, hi), resting_state(lo, hi));
        }
        std::vector<double> activity(m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            for (const auto& [i, a] : columns_[j]) {
                activity[i] += a * x_[j];
            }
        }
        basis_.assign(m_, 0);
        art_row_.clear();
        art_sign_.clear();
        std::vector<double> row_sign(m_, 0.0);  // 0: logical basic, else the artificial sign
        for (std::size_t i = 0; i < m_; ++i) {
            const Row& row = problem_.rows[i];
            const double v = activity[i];
            if (v >= row.lower - kBoundTol && v <= row.upper + kBoundTol) {
                add_var(Kind::Logical, row.lower, row.upper, v, State::Basic);
                basis_[i] = n_ + i;
            } else {
                const double bound = v < row.lower ? row.lower : row.upper;
                add_var(Kind::Logical, row.lower, row.upper, bound,
                        bound == row.lower ? State::AtLower : State::AtUpper);
                row_sign[i] = bound > v ? 1.0 : -1.0;
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (row_sign[i] != 0.0) {
                const double value = std::abs(x_[n_ + i] - activity[i]);
                basis_[i] = x_.size();
                art_row_.push_back(i);
                art_sign_.push_back(row_sign[i]);
                add_var(Kind::Artificial, 0.0, kInfinity, value, State::Basic);
            }
        }
        has_artificials_ = !art_row_.empty();
        cost_.assign(x_.size(), 0.0);

        select_columns();
        tableau_.assign(m_ * width_, 0.0);
        for (std::size_t c = 0; c < width_; ++c) {
            const std::size_t v = cols_[c];
            switch (kind_[v]) {
                case Kind::Structural:
                    for (const auto& [i, a] : columns_[v]) {
                        const double sign = row_sign[i];
                        t(i, c) = sign == 0.0 ? -a : a / sign;
                    }
                    break;
                case Kind::Logical: {
                    const std::size_t i = v - n_;
                    t(i, c) = row_sign[i] == 0.0 ? 1.0 : -1.0 / row_sign[i];
                    break;
                }
                case Kind::Artificial:
                    t(art_row_[v - n_ - m_], c) = 1.0;
                    break;
            }
        }
    }

    // Tableau columns: every basic variable plus every nonbasic one that can move.
    void select_columns() {
        cols_.clear();
        col_of_.assign(x_.size(), kNoColumn);
        for (std::size_t v = 0; v < x_.size(); ++v) {
            if (state_[v] == State::Basic || lb_[v] != ub_[v]) {
                col_of_[v] = cols_.size();
                cols_.push_back(v);
            }
        }
        width_ = cols_.size();
    }

    void rebuild_columns() {
        const std::vector<std::size_t> old_cols = cols_;
        const std::size_t old_width = width_;
        const std::vector<double> old = std::move(tableau_);
        select_columns();
        tableau_.assign(m_ * width_, 0.0);
        std::size_t c = 0;
        for (std::size_t oc = 0; oc < old_width; ++oc) {
            if (col_of_[old_cols[oc]] == kNoColumn) {
                continue;
            }
            for (std::size_t i = 0; i < m_; ++i) {
                t(i, c) = old[i * old_width + oc];
            }
            ++c;
        }
    }

    void set_phase_costs(bool phase1) {
        std::fill(cost_.begin(), cost_.end(), 0.0);
        if (phase1) {
            for (std::size_t v = n_ + m_; v < cost_.size(); ++v) {
                cost_[v] = 1.0;
            }
        } else {
            std::copy(problem_.cost.begin(), problem_.cost.end(), cost_.begin());
        }
        reduced_.assign(width_, 0.0);
        for (std::size_t c = 0; c < width_; ++c) {
            double d = cost_[cols_[c]];
            for (std::size_t i = 0; i < m_; ++i) {
                const double cb = cost_[basis_[i]];
                if (cb != 0.0) {
                    d -= cb * t(i, c);
                }
            }
            reduced_[c] = d;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            reduced_[col_of_[basis_[i]]] = 0.0;
        }
        degenerate_run_ = 0;
        bland_ = false;
    }

    struct Entering {
        std::size_t col;
        double direction;
    };

    bool choose_entering(Entering& out) const {
        const double tol = options_.optimality_tol;
        double best = 0.0;
        bool found = false;
        for (std::size_t c = 0; c < width_; ++c) {
            const std::size_t v = cols_[c];
            const double d = reduced_[c];
            double direction = 0.0;
            switch (state_[v]) {
                case State::Basic: continue;
                case State::AtLower: direction = d < -tol ? 1.0 : 0.0; break;
                case State::AtUpper: direction = d > tol ? -1.0 : 0.0; break;
                case State::Free: direction = d < -tol ? 1.0 : (d > tol ? -1.0 : 0.0); break;
            }
            if (direction == 0.0 || lb_[v] == ub_[v]) {
                continue;
            }
            if (bland_) {
                out = {c, direction};
                return true;
            }
            if (std::abs(d) > best) {
                best = std::abs(d);
                out = {c, direction};
                found = true;
            }
        }
        return found;
    }

    Status iterate() {
        while (true) {
            Entering in{};
            if (!choose_entering(in)) {
                return Status::Optimal;
            }
            if (++iterations_ > max_iterations_) {
                throw Error(ErrorCode::NumericalFailure, "simplex iteration limit reached");
            }
            const std::size_t q = in.col;
            const std::size_t entering = cols_[q];
            const double delta = in.direction;

            std::size_t leave_row = m_;
            double step = kInfinity;
            double leave_pivot = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double g = t(i, q) * delta;
                const std::size_t b = basis_[i];
                double ratio = kInfinity;
                if (g > kPivotTol && std::isfinite(lb_[b])) {
                    ratio = std::max(0.0, (x_[b] - lb_[b]) / g);
                } else if (g < -kPivotTol && std::isfinite(ub_[b])) {
                    ratio = std::max(0.0, (ub_[b] - x_[b]) / -g);
                } else {
                    continue;
                }
                bool take = false;
                if (leave_row == m_ || ratio < step - kDegenerateStep) {
                    take = true;
                } else if (ratio <= step + kDegenerateStep) {
                    if (bland_) {
                        take = b < basis_[leave_row];
                    } else {
                        take = std::abs(g) > std::abs(leave_pivot) ||
                               (std::abs(g) == std::abs(leave_pivot) && b < basis_[leave_row]);
                    }
                }
                if (take) {
                    leave_row = i;
                    step = ratio;
                    leave_pivot = g;
                }
            }

            const double span = ub_[entering] - lb_[entering];
            if (std::isfinite(span) && span <= step) {
                // Bound flip: the entering variable crosses to its other bound first.
                move(q, entering, delta * span);
                x_[entering] = delta > 0.0 ? ub_[entering] : lb_[entering];
                state_[entering] = delta > 0.0 ? State::AtUpper : State::AtLower;
                note_step(span);
                continue;
            }
            if (leave_row == m_) {
                return Status::Unbounded;
            }
            move(q, entering, delta * step);
            const std::size_t leaving = basis_[leave_row];
            if (leave_pivot > 0.0) {
                x_[leaving] = lb_[leaving];
                state_[leaving] = State::AtLower;
            } else {
                x_[leaving] = ub_[leaving];
                state_[leaving] = State::AtUpper;
            }
            state_[entering] = State::Basic;
            pivot(leave_row, q);
            note_step(step);
        }
    }

    void note_step(double step) {
        if (step <= kDegenerateStep) {
            if (++degenerate_run_ > degenerate_limit_) {
                bland_ = true;
            }
        } else {
            degenerate_run_ = 0;
            bland_ = false;
        }
    }

    void move(std::size_t q, std::size_t entering, double change) {
        if (change == 0.0) {
            return;
        }
        x_[entering] += change;
        for (std::size_t i = 0; i < m_; ++i) {
            const double a = t(i, q);
            if (a != 0.0) {
                x_[basis_[i]] -= a * change;
            }
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        double* pivot_row = &tableau_[r * width_];
        const double inv = 1.0 / pivot_row[q];
        nonzero_.clear();
        for (std::size_t c = 0; c < width_; ++c) {
            if (pivot_row[c] != 0.0) {
                pivot_row[c] *= inv;
                nonzero_.push_back(c);
            }
        }
        pivot_row[q] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) {
                continue;
            }
            double* row = &tableau_[i * width_];
            const double f = row[q];
            if (f == 0.0) {
                continue;
            }
            for (std::size_t c : nonzero_) {
                row[c] -= f * pivot_row[c];
            }
            row[q] = 0.0;
        }
        const double f = reduced_[q];
        if (f != 0.0) {
            for (std::size_t c : nonzero_) {
                reduced_[c] -= f * pivot_row[c];
            }
        }
        reduced_[q] = 0.0;
        basis_[r] = cols_[q];
    }

    // After phase 1, swap zero-valued basic artificials for any other column.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (kind_[basis_[r]] != Kind::Artificial) {
                continue;
            }
            std::size_t best = width_;
            double magnitude = 1e-7;
            for (std::size_t c = 0; c < width_; ++c) {
                const std::size_t v = cols_[c];
                if (state_[v] == State::Basic || kind_[v] == Kind::Artificial) {
                    continue;
                }
                if (std::abs(t(r, c)) > magnitude) {
                    magnitude = std::abs(t(r, c));
                    best = c;
                }
            }
            if (best == width_) {
                continue;  // redundant row; the artificial stays basic, fixed at zero
            }
            const std::size_t artificial = basis_[r];
            x_[artificial] = 0.0;
            state_[artificial] = State::AtLower;
            state_[cols_[best]] = State::Basic;
            pivot(r, best);
        }
    }

    Eigen::VectorXd column_of(std::size_t v) const {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
        switch (kind_[v]) {
            case Kind::Structural:
                for (const auto& [i, a] : columns_[v]) {
                    col(static_cast<Eigen::Index>(i)) = a;
                }
                break;
            case Kind::Logical: col(static_cast<Eigen::Index>(v - n_)) = -1.0; break;
            case Kind::Artificial: {
                const std::size_t k = v - n_ - m_;
                col(static_cast<Eigen::Index>(art_row_[k])) = art_sign_[k];
                break;
            }
        }
        return col;
    }

    // Recompute basic values from the original data to shed tableau drift.
    void refactor() {
        if (m_ == 0) {
            return;
        }
        const auto m = static_cast<Eigen::Index>(m_);
        Eigen::MatrixXd basis(m, m);
        for (std::size_t i = 0; i < m_; ++i) {
            basis.col(static_cast<Eigen::Index>(i)) = column_of(basis_[i]);
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (std::size_t v = 0; v < x_.size(); ++v) {
            if (state_[v] != State::Basic && x_[v] != 0.0) {
                rhs -= column_of(v) * x_[v];
            }
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
        const Eigen::VectorXd values = lu.solve(rhs);
        const double residual = (basis * values - rhs).cwiseAbs().maxCoeff();
        if (!values.allFinite() || residual > feasibility_tol_) {
            throw Error(ErrorCode::NumericalFailure, "final basis is singular or ill-conditioned");
        }
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t b = basis_[i];
            double value = values(static_cast<Eigen::Index>(i));
            // Snap round-off just outside a bound back onto it.
            if (value < lb_[b] && value >= lb_[b] - kBoundTol) {
                value = lb_[b];
            } else if (value > ub_[b] && value <= ub_[b] + kBoundTol) {
                value = ub_[b];
            }
            x_[b] = value;
        }
    }

    static constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

    const LpProblem& problem_;
    const SolverOptions& options_;
    std::size_t n_;
    std::size_t m_;
    std::vector<std::vector<std::pair<std::size_t, double>>> columns_;
    double feasibility_tol_ = 0.0;
    std::size_t max_iterations_ = 0;
    std::size_t degenerate_limit_ = 0;

    std::vector<Kind> kind_;
    std::vector<double> lb_, ub_, x_, cost_;
    std::vector<State> state_;
    std::vector<std::size_t> art_row_;
    std::vector<double> art_sign_;
    bool has_artificials_ = false;

    std::vector<std::size_t> basis_;
    std::vector<std::size_t> cols_;
    std::vector<std::size_t> col_of_;
    std::size_t width_ = 0;
    std::vector<double> tableau_;
    std::vector<double> reduced_;
    std::vector<std::size_t> nonzero_;

    std::size_t iterations_ = 0;
    std::size_t degenerate_run_ = 0;
    bool bland_ = false;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string var_name(const LpProblem& p, std::size_t j) {
    if (j < p.names.size() && !p.names[j].empty()) {
        return p.names[j];
    }
    return "x" + std::to_string(j);
}

void write_expression(std::ostream& os, const LpProblem& p, const std::vector<Term>& terms) {
    if (terms.empty()) {
        os << " 0 " << var_name(p, 0);
        return;
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const double c = terms[k].coef;
        if (k != 0 && k % 6 == 0) {
            os << "\n  ";  // LP readers cap the line length
        }
        os << ' ' << (c < 0.0 ? "- " : (k == 0 ? "" : "+ ")) << fmt(std::abs(c)) << ' ' << var_name(p, terms[k].var);
    }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const SolverOptions& options) {
    problem.validate();
    Simplex simplex(problem, options);
    return simplex.solve();
}

void write_lp_text(std::ostream& os, const LpProblem& problem) {
    problem.validate();
    os << "Minimize\n obj:";
    std::vector<Term> objective;
    for (std::size_t j = 0; j < problem.num_variables(); ++j) {
        if (problem.cost[j] != 0.0) {
            objective.push_back({j, problem.cost[j]});
        }
    }
    write_expression(os, problem, objective);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < problem.num_rows(); ++i) {
        const Row& row = problem.rows[i];
        const std::string name = row.name.empty() ? "r" + std::to_string(i) : row.name;
        if (row.is_equality()) {
            os << ' ' << name << ':';
            write_expression(os, problem, row.terms);
            os << " = " << fmt(row.lower) << '\n';
            continue;
        }
        const bool ranged = std::isfinite(row.lower) && std::isfinite(row.upper);
        if (std::isfinite(row.lower)) {
            os << ' ' << name << (ranged ? "_lo" : "") << ':';
            write_expression(os, problem, row.terms);
            os << " >= " << fmt(row.lower) << '\n';
        }
        if (std::isfinite(row.upper)) {
            os << ' ' << name << (ranged ? "_hi" : "") << ':';
            write_expression(os, problem, row.terms);
            os << " <= " << fmt(row.upper) << '\n';
        }
    }
    os << "Bounds\n";
    for (std::size_t j = 0; j < problem.num_variables(); ++j) {
        const double lo = problem.lower[j];
        const double hi = problem.upper[j];
        const std::string name = var_name(problem, j);
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            os << ' ' << name << " free\n";
        } else if (lo == hi) {
            os << ' ' << name << " = " << fmt(lo) << '\n';
        } else {
            os << ' ' << (std::isfinite(lo) ? fmt(lo) : "-inf") << " <= " << name << " <= "
               << (std::isfinite(hi) ? fmt(hi) : "+inf") << '\n';
        }
    }
    os << "End\n";
}

}  // namespace priceforge::lp
