#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nearopt/baselines/mga_result.hpp"
#include "nearopt/mga/budget.hpp"
#include "nearopt/rng.hpp"

namespace nearopt::baselines {

enum class BetaInterval { kSymmetric, kPositive };  // [-1, 1] or [0, 1]

const char* to_string(BetaInterval interval) noexcept;

struct RandomDirectionsConfig {
    std::size_t n_objectives = 200;
    BetaInterval interval = BetaInterval::kSymmetric;
    std::uint64_t seed = 1;
    SolveSettings settings;
};

struct RandomObjective {
    std::vector<double> costs;  // minimized; a max draw is stored negated
    std::vector<double> beta;
    bool maximize = false;
};

RandomObjective sample_random_objective(Rng& rng, BetaInterval interval,
                                        std::span<const std::size_t> interest_columns,
                                        std::size_t n_columns);

/// Objectives come from make_stream(seed, "baselines/random_directions").
MgaResult run_random_directions(const mga::BudgetedLP& budgeted,
                                std::span<const std::size_t> interest_columns,
                                const RandomDirectionsConfig& config,
                                const lp::Basis* start = nullptr);

} // namespace nearopt::baselines
