#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nearopt/lp/simplex.hpp"
#include "nearopt/mga/budget.hpp"
#include "nearopt/mga/vertex_store.hpp"

namespace nearopt::baselines {

/// Optima of a batch of independent single-objective solves.
struct MgaResult {
    mga::VertexStore store;
    std::vector<std::size_t> pivots_per_solve;
    std::size_t total_pivots = 0;
    std::uint64_t pivot_flops = 0;
    std::size_t failed_solves = 0;
    std::uint64_t seed = 0;
};

struct SolveSettings {
    lp::SolveOptions options;
    bool keep_full_vertices = false;
    double dedupe_tolerance = 0.0;  // VertexStore tolerance
    // Worker threads for independent solves; 1 runs sequentially. Results are
    // recorded in the same order either way.
    std::size_t threads = 1;
};

/// One solve over the budgeted LP from `start` on a fresh tableau. Empty when
/// the LP layer reported an error or no optimum.
std::optional<lp::SolveResult> solve_from(const mga::BudgetedLP& budgeted, const lp::Basis& start,
                                          std::span<const double> costs,
                                          const lp::SolveOptions& options);

/// Solves every cost vector, on `threads` workers, in input order.
std::vector<std::optional<lp::SolveResult>> solve_batch(
    const mga::BudgetedLP& budgeted, const lp::Basis& start,
    std::span<const std::vector<double>> costs, const SolveSettings& settings);

/// Appends a solve outcome (or a failure) to `out`.
void record(const mga::BudgetedLP& budgeted, const std::optional<lp::SolveResult>& solved,
            std::span<const std::size_t> interest_columns, const SolveSettings& settings,
            MgaResult& out);

/// Phase-one basis of the budgeted LP, shared by every baseline solve.
lp::Basis shared_start(const mga::BudgetedLP& budgeted, const lp::SolveOptions& options);

} // namespace nearopt::baselines
