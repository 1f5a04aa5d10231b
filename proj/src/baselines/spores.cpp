#include "nearopt/baselines/spores.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "nearopt/error.hpp"

namespace nearopt::baselines {

void SporesConfig::validate() const {
    require(r0 > 0.0 && std::isfinite(r0), "SPORES r0 must be > 0");
    require(gamma >= 0.0 && std::isfinite(gamma), "SPORES gamma must be >= 0");
    require(!ab_pairs.empty(), "SPORES needs at least one (a, b) pair");
    require(n_max >= 1 || total_objectives >= 1, "SPORES needs n_max >= 1 or a total budget");
    require(!technologies.empty(), "SPORES needs at least one technology");
    for (const auto& g : technologies) require(!g.empty(), "technology without capacity columns");
}

std::size_t spores_n_max(std::size_t objectives, std::size_t n_pairs, std::size_t n_technologies) {
    require(n_pairs > 0 && n_technologies > 0, "empty SPORES sequence grid");
    const double per = static_cast<double>(objectives) / static_cast<double>(n_pairs * n_technologies);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(per)));
}

std::vector<std::vector<double>> capacities_of(std::span<const double> x,
                                               const CapacityGroups& groups) {
    std::vector<std::vector<double>> caps(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        caps[i].reserve(groups[i].size());
        for (std::size_t c : groups[i]) {
            require(c < x.size(), "capacity column out of range");
            caps[i].push_back(x[c]);
        }
    }
    return caps;
}

SporesWeights spores_weight_init(const std::vector<std::vector<double>>& optimal_capacities,
                                 const SporesConfig& config) {
    SporesWeights w;
    w.w.resize(optimal_capacities.size());
    for (std::size_t i = 0; i < optimal_capacities.size(); ++i)
        for (double cap : optimal_capacities[i]) w.w[i].push_back(cap > config.gamma ? config.r0 : 0.0);
    return w;
}

SporesWeights spores_weight_update(const SporesWeights& weights,
                                   const std::vector<std::vector<double>>& previous_capacities,
                                   const SporesConfig& config) {
    require(previous_capacities.size() == weights.w.size(), "capacity shape mismatch");
    SporesWeights next = weights;
    ++next.n;
    for (std::size_t i = 0; i < next.w.size(); ++i) {
        require(previous_capacities[i].size() == next.w[i].size(), "capacity shape mismatch");
        for (std::size_t j = 0; j < next.w[i].size(); ++j)
            if (previous_capacities[i][j] > config.gamma) next.w[i][j] += config.r0;
    }
    return next;
}

std::vector<double> spores_objective(const SporesWeights& weights, const CapacityGroups& groups,
                                     std::size_t i0, double a, double b, std::size_t n_columns) {
    require(i0 < groups.size(), "favored technology out of range");
    require(weights.w.size() == groups.size(), "weight shape mismatch");
    std::vector<double> c(n_columns, 0.0);
    for (std::size_t col : groups[i0]) {
        require(col < n_columns, "capacity column out of range");
        c[col] += a;
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
        require(weights.w[i].size() == groups[i].size(), "weight shape mismatch");
        for (std::size_t j = 0; j < groups[i].size(); ++j) c[groups[i][j]] += b * weights.w[i][j];
    }
    return c;
}

namespace {

double max_abs_diff(const std::vector<std::vector<double>>& x,
                    const std::vector<std::vector<double>>& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x[i].size(); ++j) d = std::max(d, std::abs(x[i][j] - y[i][j]));
    return d;
}

struct Sequence {
    std::size_t pair = 0;
    std::size_t tech = 0;
    SporesWeights weights;
    std::optional<std::vector<std::vector<double>>> previous;
    std::size_t solves = 0;
    bool live = true;
};

} // namespace

SporesResult run_spores(const mga::BudgetedLP& budgeted, std::span<const std::size_t> interest_columns,
                        const SporesConfig& config, const lp::Basis* start) {
    config.validate();
    const std::size_t n_cols = budgeted.lp.cols();
    const auto optimal_caps = capacities_of(budgeted.optimal_vertex, config.technologies);

    double tol = config.fixed_point_tol;
    if (tol <= 0.0) {
        double top = 1.0;
        for (const auto& g : optimal_caps)
            for (double v : g) top = std::max(top, std::abs(v));
        tol = 1e-6 * top;
    }

    const std::size_t n_seq = config.ab_pairs.size() * config.technologies.size();
    const std::size_t per_seq = config.n_max == 0 ? static_cast<std::size_t>(-1) : config.n_max;
    const std::size_t total = config.total_objectives > 0 ? config.total_objectives
                                                          : n_seq * config.n_max;

    // Sequence s pairs ab_pairs[s % P] with technology s / P, so a partial
    // first round still covers every (a, b) pair.
    std::vector<Sequence> seqs(n_seq);
    const auto w0 = spores_weight_init(optimal_caps, config);
    for (std::size_t s = 0; s < n_seq; ++s) {
        seqs[s].pair = s % config.ab_pairs.size();
        seqs[s].tech = s / config.ab_pairs.size();
        seqs[s].weights = w0;
    }

    SporesResult out;
    out.sequences = n_seq;
    out.mga.store = mga::VertexStore(config.settings.dedupe_tolerance);
    const lp::Basis basis = start ? *start : shared_start(budgeted, config.settings.options);

    std::size_t spent = 0;
    while (spent < total) {
        std::vector<std::size_t> round;
        for (std::size_t s = 0; s < n_seq && spent + round.size() < total; ++s)
            if (seqs[s].live && seqs[s].solves < per_seq) round.push_back(s);
        if (round.empty()) break;

        std::vector<std::vector<double>> costs;
        costs.reserve(round.size());
        for (std::size_t s : round) {
            const auto [a, b] = config.ab_pairs[seqs[s].pair];
            costs.push_back(
                spores_objective(seqs[s].weights, config.technologies, seqs[s].tech, a, b, n_cols));
        }
        const auto solved = solve_batch(budgeted, basis, costs, config.settings);

        for (std::size_t k = 0; k < round.size(); ++k) {
            Sequence& seq = seqs[round[k]];
            ++seq.solves;
            ++spent;
            record(budgeted, solved[k], interest_columns, config.settings, out.mga);
            if (!solved[k]) {
                seq.live = false;
                ++out.aborted;
                continue;
            }
            auto caps = capacities_of(solved[k]->vertex, config.technologies);
            if (seq.previous && max_abs_diff(*seq.previous, caps) < tol) {
                seq.live = false;
                ++out.fixed_points;
                continue;
            }
            seq.weights = spores_weight_update(seq.weights, caps, config);
            seq.previous = std::move(caps);
        }
    }
    return out;
}

CapacityGroups hub_capacity_groups(const hub::HubModel& model) {
    CapacityGroups groups(hub::kNumTechnologies);
    for (const auto& cap : model.capacities)
        groups[static_cast<std::size_t>(cap.tech)].push_back(cap.column);
    std::erase_if(groups, [](const auto& g) { return g.empty(); });
    return groups;
}

} // namespace nearopt::baselines
