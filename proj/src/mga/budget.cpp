#include "nearopt/mga/budget.hpp"

#include <cmath>
#include <string>

#include "nearopt/error.hpp"

namespace nearopt::mga {

double BudgetedLP::budget() const noexcept { return f_min + epsilon * std::abs(f_min); }

double BudgetedLP::cost_of(std::span<const double> x) const {
    require(x.size() >= base.cols(), "vertex shorter than the cost vector");
    return base.cost_of(x.first(base.cols()));
}

std::vector<double> BudgetedLP::optimal_values(std::span<const std::size_t> columns) const {
    std::vector<double> out;
    out.reserve(columns.size());
    for (std::size_t c : columns) {
        require(c < optimal_vertex.size(), "column out of range");
        out.push_back(optimal_vertex[c]);
    }
    return out;
}

BudgetedLP build_budgeted_lp(const lp::StandardFormLP& lp, double epsilon,
                             const lp::SolveOptions& options) {
    require(epsilon >= 0.0 && std::isfinite(epsilon), "epsilon must be >= 0");
    auto r = lp::solve(lp, options);
    if (r.status == lp::SolveStatus::kInfeasible) {
        fail(ErrorCode::kInfeasible, "cost LP is infeasible");
    }
    if (r.status == lp::SolveStatus::kUnbounded) {
        fail(ErrorCode::kUnbounded, "cost LP is unbounded");
    }
    BudgetedLP out;
    out.base = lp;
    out.f_min = r.objective_value;
    out.epsilon = epsilon;
    out.base_pivots = r.phase2_pivots;
    out.lp = lp.with_slack_row(lp.c(), out.budget(), "budget", "budget_slack");
    require(out.lp.rows() == lp.rows() + 1, "budget row was eliminated as redundant");

    // The slack takes the budget row; its value is the remaining allowance.
    out.optimal_basis = r.basis;
    out.optimal_basis.indices.push_back(out.slack_column());
    out.optimal_vertex = r.vertex;
    out.optimal_vertex.push_back(std::max(0.0, out.budget() - out.f_min));
    return out;
}

} // namespace nearopt::mga
