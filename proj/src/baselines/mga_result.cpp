#include "nearopt/baselines/mga_result.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "nearopt/error.hpp"

namespace nearopt::baselines {

std::optional<lp::SolveResult> solve_from(const mga::BudgetedLP& budgeted, const lp::Basis& start,
                                          std::span<const double> costs,
                                          const lp::SolveOptions& options) {
    try {
        lp::SolveResult r = lp::solve(budgeted.lp, options, costs, &start);
        if (r.status != lp::SolveStatus::kOptimal) return std::nullopt;
        return r;
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::vector<std::optional<lp::SolveResult>> solve_batch(
    const mga::BudgetedLP& budgeted, const lp::Basis& start,
    std::span<const std::vector<double>> costs, const SolveSettings& settings) {
    std::vector<std::optional<lp::SolveResult>> out(costs.size());
    const std::size_t workers = std::min(std::max<std::size_t>(settings.threads, 1), costs.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < costs.size(); ++i)
            out[i] = solve_from(budgeted, start, costs[i], settings.options);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < costs.size(); i = next++)
            out[i] = solve_from(budgeted, start, costs[i], settings.options);
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();  // joins
    return out;
}

void record(const mga::BudgetedLP& budgeted, const std::optional<lp::SolveResult>& solved,
            std::span<const std::size_t> interest_columns, const SolveSettings& settings,
            MgaResult& out) {
    if (!solved) {
        ++out.failed_solves;
        return;
    }
    out.pivots_per_solve.push_back(solved->phase2_pivots);
    out.total_pivots += solved->phase2_pivots;
    out.pivot_flops += solved->pivot_flops;
    std::vector<double> proj;
    proj.reserve(interest_columns.size());
    for (std::size_t c : interest_columns) proj.push_back(solved->vertex[c]);
    std::span<const double> full;
    if (settings.keep_full_vertices) full = solved->vertex;
    out.store.insert(proj, budgeted.cost_of(solved->vertex), mga::VertexTag::kOptimal, full);
}

lp::Basis shared_start(const mga::BudgetedLP& budgeted, const lp::SolveOptions& options) {
    return lp::phase_one(budgeted.lp, options.rules);
}

} // namespace nearopt::baselines
