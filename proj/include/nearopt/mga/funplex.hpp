#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nearopt/lp/simplex.hpp"
#include "nearopt/mga/budget.hpp"
#include "nearopt/mga/directions.hpp"
#include "nearopt/mga/vertex_store.hpp"
#include "nearopt/rng.hpp"

namespace nearopt::mga {

struct FunplexOptions {
    std::size_t n_objectives = 200;
    // Ablation switches; all on is the full method.
    bool record_intermediaries = true;  // off: store only vertices where some objective is optimal
    bool check_all_objectives = true;   // off: only the current objective row is carried
    bool warm_start = true;             // off: every objective restarts from the phase-1 basis
    bool scale_variables = true;        // off: L_i = 1
    // Keep whole LP vertices in the store (for feasibility audits).
    bool keep_full_vertices = false;
    lp::PivotRules rules;
    std::size_t refactor_interval = 200;
    bool skip_zero_rows = true;
    // Per-objective pivot cap; 0 selects 50 * (m + n).
    std::size_t max_pivots = 0;
};

struct FunplexResult {
    DirectionSet directions;
    VertexStore store;
    std::vector<bool> success;
    // Objectives in the order their success flag first became true.
    std::vector<std::size_t> objective_order;
    // Objectives that were actively pivoted on, in order.
    std::vector<std::size_t> active_sequence;
    // Pivots spent while objective k was the current one.
    std::vector<std::size_t> pivots_per_objective;
    std::size_t total_pivots = 0;
    std::uint64_t pivot_flops = 0;
    // Projection and cost of the vertex at which success[k] first flipped.
    std::vector<std::vector<double>> first_optimal_projection;
    std::vector<double> first_optimal_cost;
    // Whole vertex at that moment; filled when keep_full_vertices is set.
    std::vector<std::vector<double>> first_optimal_vertex;
};

/// Runs Funplex on a budgeted LP. `fallback_scales` has one value or one per
/// interest column. `directions` replaces the sampled set when given (its
/// scales and columns are used as is). `phase_one_basis` is the shared
/// phase-1 basis of `budgeted.lp`; it is computed when needed and missing.
FunplexResult run_funplex(const BudgetedLP& budgeted, std::span<const std::size_t> interest_columns,
                          std::span<const double> fallback_scales, Rng& rng,
                          const FunplexOptions& options = {},
                          const DirectionSet* directions = nullptr,
                          const lp::Basis* phase_one_basis = nullptr);

} // namespace nearopt::mga
