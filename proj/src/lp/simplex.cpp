#include "nearopt/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nearopt/error.hpp"

namespace nearopt::lp {

namespace {
constexpr double kTiedPivotFraction = 1e-2;
}

const char* to_string(SolveStatus status) noexcept {
    switch (status) {
        case SolveStatus::kOptimal: return "optimal";
        case SolveStatus::kUnbounded: return "unbounded";
        case SolveStatus::kInfeasible: return "infeasible";
    }
    return "unknown";
}

PivotRules scaled_for(PivotRules rules, std::span<const double> costs) noexcept {
    double cmax = 0.0;
    for (double c : costs) cmax = std::max(cmax, std::abs(c));
    if (cmax > 0.0 && cmax < 1.0) rules.optimality_tol *= cmax;
    return rules;
}

std::optional<std::size_t> select_pivot_column(std::span<const double> relative_costs,
                                               double tol, bool bland) {
    std::optional<std::size_t> best;
    double best_value = -tol;
    for (std::size_t j = 0; j < relative_costs.size(); ++j) {
        const double r = relative_costs[j];
        if (r >= -tol) continue;
        if (bland) return j;
        if (r < best_value) {
            best_value = r;
            best = j;
        }
    }
    return best;
}

std::optional<std::size_t> select_pivot_row(const Tableau& tableau, std::size_t col, double tol) {
    const std::size_t m = tableau.num_constraints();
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
        const double e = tableau.entry(r, col);
        if (e > tol) min_ratio = std::min(min_ratio, std::max(0.0, tableau.rhs(r)) / e);
    }
    if (!std::isfinite(min_ratio)) return std::nullopt;

    // Rows tied at the minimum ratio; tiny pivots among them are passed over.
    const double slack = 1e-12 * std::max(1.0, min_ratio);
    auto tied = [&](std::size_t r) {
        const double e = tableau.entry(r, col);
        return e > tol && std::max(0.0, tableau.rhs(r)) / e <= min_ratio + slack;
    };
    double max_pivot = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        if (tied(r)) max_pivot = std::max(max_pivot, tableau.entry(r, col));
    }
    // Among the tied rows: smallest perturbed ratio, then lowest basic index.
    std::optional<std::size_t> best;
    double best_key = std::numeric_limits<double>::infinity();
    std::size_t best_basic = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < m; ++r) {
        const double e = tableau.entry(r, col);
        if (!tied(r) || e < kTiedPivotFraction * max_pivot) continue;
        const double key = tableau.perturbation(r) / e;
        const std::size_t basic = tableau.basis().indices[r];
        const double eps = 1e-12 * std::max(1.0, std::abs(best_key));
        if (!best || key < best_key - eps || (key <= best_key + eps && basic < best_basic)) {
            best_key = key;
            best_basic = basic;
            best = r;
        }
    }
    return best;
}

void PivotSelector::record(double before, double after) {
    const bool improved = after < before - 1e-12 * std::max(1.0, std::abs(before));
    if (improved) {
        degenerate_run_ = 0;
        bland_ = false;
        return;
    }
    if (++degenerate_run_ >= rules_.bland_after && rules_.bland_after > 0) bland_ = true;
}

PhaseTwoOutcome run_phase_two(Tableau& tableau, std::size_t objective, PivotSelector& selector,
                              std::size_t max_pivots,
                              const std::function<void(Tableau&)>& on_pivot) {
    PhaseTwoOutcome out;
    for (;;) {
        auto col = selector.column(tableau, objective);
        if (!col) {
            out.status = SolveStatus::kOptimal;
            return out;
        }
        auto row = selector.row(tableau, *col);
        if (!row) {
            out.status = SolveStatus::kUnbounded;
            return out;
        }
        if (out.pivots >= max_pivots) {
            fail(ErrorCode::kIterationLimit,
                 "no optimum after " + std::to_string(max_pivots) + " pivots (cycling?)");
        }
        const double before = tableau.objective_value(objective);
        tableau.pivot(*col, *row);
        ++out.pivots;
        selector.record(before, tableau.objective_value(objective));
        if (on_pivot) on_pivot(tableau);
    }
}

Basis phase_one(const StandardFormLP& lp, const PivotRules& rules) {
    const std::size_t m = lp.rows();
    const std::size_t n = lp.cols();
    const auto& a = lp.a();

    // A column with a single positive entry can start basic in that row.
    std::vector<std::ptrdiff_t> unit_row(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
        std::ptrdiff_t hit = -1;
        bool ok = true;
        for (std::size_t r = 0; r < m && ok; ++r) {
            const double v = a(r, j);
            if (v == 0.0) continue;
            if (hit >= 0 || v < 0.0) ok = false;
            hit = static_cast<std::ptrdiff_t>(r);
        }
        if (ok && hit >= 0) unit_row[j] = hit;
    }
    // Prefer the highest-index candidate: slack columns come last.
    std::vector<std::ptrdiff_t> row_slack(m, -1);
    for (std::size_t j = n; j-- > 0;) {
        if (unit_row[j] >= 0 && row_slack[static_cast<std::size_t>(unit_row[j])] < 0) {
            row_slack[static_cast<std::size_t>(unit_row[j])] = static_cast<std::ptrdiff_t>(j);
        }
    }
    std::vector<std::size_t> art_rows;
    for (std::size_t r = 0; r < m; ++r) {
        if (row_slack[r] < 0) art_rows.push_back(r);
    }

    const std::size_t n_aux = n + art_rows.size();
    DenseMatrix aux(m, n_aux);
    for (std::size_t r = 0; r < m; ++r) {
        auto src = a.row(r);
        std::copy(src.begin(), src.end(), aux.row(r).begin());
    }
    Basis start;
    start.indices.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        if (row_slack[r] >= 0) start.indices[r] = static_cast<std::size_t>(row_slack[r]);
    }
    for (std::size_t i = 0; i < art_rows.size(); ++i) {
        aux(art_rows[i], n + i) = 1.0;
        start.indices[art_rows[i]] = n + i;
    }
    if (art_rows.empty()) return start;

    std::vector<std::vector<double>> objective(1, std::vector<double>(n_aux, 0.0));
    for (std::size_t i = 0; i < art_rows.size(); ++i) objective[0][n + i] = 1.0;
    Tableau tab(aux, lp.b(), start, objective);

    PivotSelector selector(rules);
    const std::size_t cap = 50 * (m + n_aux);
    std::size_t since_refactor = 0;
    auto outcome = run_phase_two(tab, 0, selector, cap, [&](Tableau& t) {
        if (++since_refactor >= 200) {
            t.refactor(aux, lp.b(), objective);
            since_refactor = 0;
        }
    });
    (void)outcome;  // the auxiliary problem is bounded below by zero

    double bmax = 1.0;
    for (double v : lp.b()) bmax = std::max(bmax, std::abs(v));
    if (tab.objective_value(0) > rules.feasibility_tol * bmax) {
        fail(ErrorCode::kInfeasible,
             "LP infeasible: phase-one optimum " + std::to_string(tab.objective_value(0)));
    }

    // Drive artificials that remain basic at zero out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis().indices[r] < n) continue;
        std::size_t best = n;
        double best_abs = rules.feasibility_tol;
        for (std::size_t j = 0; j < n; ++j) {
            if (tab.is_basic(j)) continue;
            if (std::abs(tab.entry(r, j)) > best_abs) {
                best_abs = std::abs(tab.entry(r, j));
                best = j;
            }
        }
        if (best == n) {
            fail(ErrorCode::kNumerical,
                 "artificial variable stuck in basis at row '" + lp.row_names()[r] + "'");
        }
        tab.pivot(best, r);
    }
    return tab.basis();
}

Tableau build_tableau(const StandardFormLP& lp, const Basis& basis, std::span<const double> costs) {
    std::vector<std::vector<double>> objective(1);
    if (costs.empty()) {
        objective[0] = lp.c();
    } else {
        require(costs.size() == lp.cols(), "cost override length != columns");
        objective[0].assign(costs.begin(), costs.end());
    }
    return Tableau(lp.a(), lp.b(), basis, objective);
}

SolveResult solve(const StandardFormLP& lp, const SolveOptions& options,
                  std::span<const double> cost_override, const Basis* warm_basis) {
    SolveResult result;
    Basis basis;
    if (warm_basis) {
        basis = *warm_basis;
    } else {
        try {
            basis = phase_one(lp, options.rules);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::kInfeasible) throw;
            result.status = SolveStatus::kInfeasible;
            return result;
        }
    }
    std::vector<std::vector<double>> objective(1);
    if (cost_override.empty()) {
        objective[0] = lp.c();
    } else {
        require(cost_override.size() == lp.cols(), "cost override length != columns");
        objective[0].assign(cost_override.begin(), cost_override.end());
    }
    Tableau tab(lp.a(), lp.b(), basis, objective);
    tab.set_skip_zero_rows(options.skip_zero_rows);
    if (warm_basis) {
        for (std::size_t r = 0; r < tab.num_constraints(); ++r) {
            if (tab.rhs(r) < -options.rules.feasibility_tol * 1e3) {
                fail(ErrorCode::kInvalidArgument, "warm basis is not primal feasible");
            }
        }
    }

    PivotSelector selector(scaled_for(options.rules, objective[0]));
    const std::size_t cap =
        options.max_pivots ? options.max_pivots : 50 * (lp.rows() + lp.cols());
    if (options.record_vertices) result.visited_vertices.push_back(tab.vertex());
    std::size_t since_refactor = 0;
    auto outcome = run_phase_two(tab, 0, selector, cap, [&](Tableau& t) {
        if (options.record_vertices) result.visited_vertices.push_back(t.vertex());
        if (options.refactor_interval && ++since_refactor >= options.refactor_interval) {
            t.refactor(lp.a(), lp.b(), objective);
            since_refactor = 0;
        }
    });
    result.status = outcome.status;
    result.phase2_pivots = outcome.pivots;
    result.pivot_flops = tab.pivot_flops();
    result.basis = tab.basis();
    result.vertex = tab.vertex();
    for (double& v : result.vertex) {
        if (v < 0.0 && v > -options.rules.feasibility_tol) v = 0.0;
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < lp.cols(); ++j) obj += objective[0][j] * result.vertex[j];
    result.objective_value = obj;
    return result;
}

} // namespace nearopt::lp
