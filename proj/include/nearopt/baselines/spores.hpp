#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nearopt/baselines/mga_result.hpp"
#include "nearopt/hub/energy_hub.hpp"
#include "nearopt/mga/budget.hpp"

namespace nearopt::baselines {

// capacity_columns[i][j]: capacity column of technology i in region j.
using CapacityGroups = std::vector<std::vector<std::size_t>>;

struct SporesConfig {
    double r0 = 0.5;
    double gamma = 100.0;
    std::vector<std::pair<double, double>> ab_pairs{{-100, 1}, {-10, 1}, {-1, 1},
                                                    {1, 1},    {10, 1},  {100, 1}};
    // Solves per sequence; 0 means unlimited (use total_objectives).
    std::size_t n_max = 5;
    // Total solves across all sequences; 0 means ab_pairs * |I| * n_max.
    std::size_t total_objectives = 0;
    CapacityGroups technologies;
    // Absolute L-inf tolerance of the fixed-point test; <= 0 picks
    // 1e-6 * max(1, largest optimal capacity).
    double fixed_point_tol = 0.0;
    SolveSettings settings;

    void validate() const;
};

/// N_max that spreads `objectives` solves over ab_pairs * n_technologies sequences.
std::size_t spores_n_max(std::size_t objectives, std::size_t n_pairs, std::size_t n_technologies);

struct SporesWeights {
    std::vector<std::vector<double>> w;  // [i][j]
    std::size_t n = 0;
};

// Capacity values per (i, j) read from a full vertex.
std::vector<std::vector<double>> capacities_of(std::span<const double> x,
                                               const CapacityGroups& groups);

SporesWeights spores_weight_init(const std::vector<std::vector<double>>& optimal_capacities,
                                 const SporesConfig& config);
SporesWeights spores_weight_update(const SporesWeights& weights,
                                   const std::vector<std::vector<double>>& previous_capacities,
                                   const SporesConfig& config);
std::vector<double> spores_objective(const SporesWeights& weights, const CapacityGroups& groups,
                                     std::size_t i0, double a, double b, std::size_t n_columns);

struct SporesResult {
    MgaResult mga;
    std::size_t sequences = 0;
    std::size_t fixed_points = 0;  // sequences stopped at a fixed point
    std::size_t aborted = 0;       // sequences stopped by a failed solve
};

/// Sequences run in rounds: each round gives every live sequence one solve,
/// until a sequence hits n_max, a fixed point or a failure, or the total is spent.
SporesResult run_spores(const mga::BudgetedLP& budgeted, std::span<const std::size_t> interest_columns,
                        const SporesConfig& config, const lp::Basis* start = nullptr);

/// Capacity columns of every enabled technology of a hub model (PV by site).
CapacityGroups hub_capacity_groups(const hub::HubModel& model);

} // namespace nearopt::baselines
