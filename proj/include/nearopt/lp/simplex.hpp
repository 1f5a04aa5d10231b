#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nearopt/lp/standard_form.hpp"
#include "nearopt/lp/tableau.hpp"

namespace nearopt::lp {

struct PivotRules {
    double optimality_tol = kOptimalityTol;
    double feasibility_tol = kFeasibilityTol;
    // Column entries at or below this are not eligible pivots in the ratio test.
    double pivot_tol = 1e-7;
    // Consecutive degenerate pivots before switching to Bland's rule; 0 never
    // switches. The perturbed ratio test already rules out cycling.
    std::size_t bland_after = 0;
};

/// Rules with the optimality tolerance scaled by the largest cost magnitude
/// when that is below 1, so objectives with small coefficients are solved to
/// the same relative accuracy.
PivotRules scaled_for(PivotRules rules, std::span<const double> costs) noexcept;

/// Dantzig column choice: most negative relative cost, lowest index on ties.
/// With `bland` set, the lowest-index column with negative relative cost.
/// Returns nullopt when every relative cost is >= -tol.
std::optional<std::size_t> select_pivot_column(std::span<const double> relative_costs,
                                               double tol = kOptimalityTol, bool bland = false);

/// Minimum-ratio test over rows with an entry above `tol` in `col`. Tied rows
/// whose entry is under 1% of the largest tied entry are skipped; the rest are
/// ordered by perturbation / entry (a lexicographic rule) and then by lowest
/// basic index. nullopt means the column is an unbounded direction.
std::optional<std::size_t> select_pivot_row(const Tableau& tableau, std::size_t col,
                                            double tol = kFeasibilityTol);

/// Tracks degenerate pivots and switches between Dantzig and Bland.
class PivotSelector {
public:
    explicit PivotSelector(PivotRules rules = {}) : rules_(rules) {}

    std::optional<std::size_t> column(const Tableau& tableau, std::size_t objective) const {
        return select_pivot_column(tableau.relative_costs(objective), rules_.optimality_tol,
                                   bland_);
    }
    std::optional<std::size_t> row(const Tableau& tableau, std::size_t col) const {
        return select_pivot_row(tableau, col, rules_.pivot_tol);
    }
    // Call after each pivot with the objective value before and after.
    void record(double before, double after);
    void reset() noexcept {
        degenerate_run_ = 0;
        bland_ = false;
    }
    bool bland_active() const noexcept { return bland_; }
    const PivotRules& rules() const noexcept { return rules_; }

private:
    PivotRules rules_;
    std::size_t degenerate_run_ = 0;
    bool bland_ = false;
};

enum class SolveStatus { kOptimal, kUnbounded, kInfeasible };

const char* to_string(SolveStatus status) noexcept;

struct SolveOptions {
    PivotRules rules;
    // Hard cap on phase-two pivots; 0 selects 50 * (m + n).
    std::size_t max_pivots = 0;
    bool record_vertices = false;
    // Pivots between refactorizations of the tableau; 0 disables.
    std::size_t refactor_interval = 200;
    // See Tableau::set_skip_zero_rows; off gives full-tableau operation counts.
    bool skip_zero_rows = true;
};

struct SolveResult {
    SolveStatus status = SolveStatus::kInfeasible;
    std::vector<double> vertex;
    double objective_value = 0.0;
    std::size_t phase2_pivots = 0;
    std::uint64_t pivot_flops = 0;
    Basis basis;
    std::vector<std::vector<double>> visited_vertices;
};

/// Auxiliary problem with one artificial per row lacking a unit slack column,
/// minimizing the sum of artificials. Throws kInfeasible when that minimum is
/// positive.
Basis phase_one(const StandardFormLP& lp, const PivotRules& rules = {});

/// Builds the single-objective tableau for `costs` (lp.c() when empty).
Tableau build_tableau(const StandardFormLP& lp, const Basis& basis,
                      std::span<const double> costs = {});

struct PhaseTwoOutcome {
    SolveStatus status = SolveStatus::kOptimal;
    std::size_t pivots = 0;
};

/// Pivots objective row `objective` of an existing tableau to optimality.
/// `on_pivot` runs after every completed pivot. Throws kIterationLimit past
/// `max_pivots`.
PhaseTwoOutcome run_phase_two(Tableau& tableau, std::size_t objective, PivotSelector& selector,
                              std::size_t max_pivots,
                              const std::function<void(Tableau&)>& on_pivot = {});

SolveResult solve(const StandardFormLP& lp, const SolveOptions& options = {},
                  std::span<const double> cost_override = {}, const Basis* warm_basis = nullptr);

} // namespace nearopt::lp
