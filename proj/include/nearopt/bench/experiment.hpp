#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nearopt/bench/config.hpp"
#include "nearopt/metrics/hull.hpp"
#include "nearopt/metrics/outline.hpp"
#include "nearopt/mga/budget.hpp"
#include "nearopt/mga/vertex_store.hpp"

namespace nearopt::bench {

struct MethodOutcome {
    Method method = Method::kFunplex;
    mga::VertexStore store;
    std::size_t objectives = 0;  // objectives or solves spent
    std::size_t pivots = 0;
    std::uint64_t pivot_flops = 0;
    std::size_t failed_solves = 0;
    double wall_seconds = 0.0;
    metrics::HullVolumeResult volume;
    std::optional<double> normalized_volume;
    std::optional<double> volume_gain;      // Funplex volume / this volume
    std::optional<double> efficiency_gain;  // this pivots / Funplex pivots
};

struct OutlineSet {
    std::array<std::size_t, 2> dims{};  // positions in the interest list
    metrics::ProjectionOutline reference;
};

struct ExperimentOutcome {
    ExperimentConfig config;
    std::size_t rows = 0;
    std::size_t cols = 0;
    double f_min = 0.0;
    double budget = 0.0;
    std::vector<std::size_t> interest_columns;
    std::vector<std::string> interest_names;
    std::vector<double> scales;  // volumes use x_i / L_i
    std::vector<MethodOutcome> methods;
    std::vector<OutlineSet> outlines;
    // Budgeted LP, kept for audits of full vertices.
    mga::BudgetedLP budgeted;

    const MethodOutcome* find(Method m) const;
    /// The RunRecord: config snapshot, model summary, per-method results.
    nlohmann::json record() const;
};

/// Builds the model, its cost optimum and shared phase-1 basis once, then
/// runs every requested method and the metrics. Errors are rethrown with the
/// failing stage in the message.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

struct SweepOutcome {
    SweepAxis axis = SweepAxis::kNone;
    std::vector<double> grid;
    std::vector<ExperimentOutcome> points;
    // Log-log slope of pivots against the grid value, per method.
    std::vector<std::pair<Method, double>> pivot_slopes;

    nlohmann::json summary() const;
};

SweepOutcome run_sweep(const ExperimentConfig& config);

/// True when two records agree on everything but timestamps and wall times.
bool same_results(const nlohmann::json& a, const nlohmann::json& b);

} // namespace nearopt::bench
