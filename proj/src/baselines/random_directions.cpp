#include "nearopt/baselines/random_directions.hpp"

#include <random>

#include "nearopt/error.hpp"

namespace nearopt::baselines {

const char* to_string(BetaInterval interval) noexcept {
    return interval == BetaInterval::kPositive ? "positive" : "symmetric";
}

RandomObjective sample_random_objective(Rng& rng, BetaInterval interval,
                                        std::span<const std::size_t> interest_columns,
                                        std::size_t n_columns) {
    require(!interest_columns.empty(), "no interest columns");
    const double lo = interval == BetaInterval::kPositive ? 0.0 : -1.0;
    std::uniform_real_distribution<double> beta(lo, 1.0);
    std::bernoulli_distribution sense(0.5);

    RandomObjective o;
    o.costs.assign(n_columns, 0.0);
    o.beta.reserve(interest_columns.size());
    for (std::size_t c : interest_columns) {
        require(c < n_columns, "interest column out of range");
        o.beta.push_back(beta(rng));
    }
    o.maximize = sense(rng);
    const double sign = o.maximize ? -1.0 : 1.0;
    for (std::size_t i = 0; i < interest_columns.size(); ++i)
        o.costs[interest_columns[i]] += sign * o.beta[i];
    return o;
}

MgaResult run_random_directions(const mga::BudgetedLP& budgeted,
                                std::span<const std::size_t> interest_columns,
                                const RandomDirectionsConfig& config, const lp::Basis* start) {
    require(config.n_objectives >= 1, "random directions needs N_k >= 1");
    Rng rng = make_stream(config.seed, "baselines/random_directions");
    std::vector<std::vector<double>> costs;
    costs.reserve(config.n_objectives);
    for (std::size_t k = 0; k < config.n_objectives; ++k)
        costs.push_back(
            sample_random_objective(rng, config.interval, interest_columns, budgeted.lp.cols()).costs);

    MgaResult out;
    out.seed = config.seed;
    out.store = mga::VertexStore(config.settings.dedupe_tolerance);
    const lp::Basis basis = start ? *start : shared_start(budgeted, config.settings.options);
    const auto solved = solve_batch(budgeted, basis, costs, config.settings);
    for (const auto& s : solved) record(budgeted, s, interest_columns, config.settings, out);
    return out;
}

} // namespace nearopt::baselines
