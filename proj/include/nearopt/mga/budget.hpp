#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nearopt/lp/simplex.hpp"
#include "nearopt/lp/standard_form.hpp"

namespace nearopt::mga {

/// The near-optimal polytope: the original constraints plus
/// c'x + s = f_min + epsilon * |f_min|, s >= 0. Columns keep their indices;
/// the budget slack is the last column and the budget row the last row.
struct BudgetedLP {
    lp::StandardFormLP base;
    lp::StandardFormLP lp;
    double f_min = 0.0;
    double epsilon = 0.0;
    // Cost-optimal vertex and basis, both for the augmented LP.
    std::vector<double> optimal_vertex;
    lp::Basis optimal_basis;
    std::size_t base_pivots = 0;  // phase-two pivots of the cost solve

    double budget() const noexcept;
    std::size_t budget_row() const noexcept { return lp.rows() - 1; }
    std::size_t slack_column() const noexcept { return lp.cols() - 1; }
    // Original cost of a vertex of the augmented LP.
    double cost_of(std::span<const double> x) const;
    // Values of the given columns at the cost optimum.
    std::vector<double> optimal_values(std::span<const std::size_t> columns) const;
};

/// Solves the cost LP, then appends the budget row. Throws kInfeasible or
/// kUnbounded when the cost LP has no optimum.
BudgetedLP build_budgeted_lp(const lp::StandardFormLP& lp, double epsilon,
                             const lp::SolveOptions& options = {});

} // namespace nearopt::mga
