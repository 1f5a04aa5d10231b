#include "nearopt/mga/funplex.hpp"

#include <algorithm>
#include <string>

#include "nearopt/error.hpp"

namespace nearopt::mga {
namespace {

class FunplexRun {
public:
    FunplexRun(const BudgetedLP& budgeted, const FunplexOptions& options, DirectionSet set,
               lp::Basis start)
        : b_(budgeted), opt_(options), lp_(budgeted.lp), start_(std::move(start)) {
        result_.directions = std::move(set);
        const auto& dirs = result_.directions;
        const std::size_t nk = dirs.size();
        objectives_.reserve(nk);
        for (const auto& d : dirs.directions) {
            objectives_.push_back(make_objective(d, dirs, lp_.cols()));
            rules_.push_back(lp::scaled_for(opt_.rules, objectives_.back()));
        }
        double lmax = 0.0;
        for (double l : dirs.scales) lmax = std::max(lmax, l);
        result_.store = VertexStore(1e-6 * lmax);
        result_.success.assign(nk, false);
        result_.pivots_per_objective.assign(nk, 0);
        result_.first_optimal_projection.resize(nk);
        result_.first_optimal_cost.assign(nk, 0.0);
        if (opt_.keep_full_vertices) result_.first_optimal_vertex.resize(nk);
        cap_ = opt_.max_pivots ? opt_.max_pivots : 50 * (lp_.rows() + lp_.cols());
    }

    FunplexResult run() {
        std::size_t current = 0;  // the first generated objective
        reset_tableau(current);
        check(current);
        for (;;) {
            if (!result_.success[current]) optimize(current);
            auto next = select_next_objective(result_.directions.directions[current],
                                              result_.directions.directions, result_.success);
            if (!next) break;
            current = *next;
            if (!opt_.warm_start) {
                reset_tableau(current);
                check(current);
            } else if (!opt_.check_all_objectives) {
                tab_.set_objective(0, objectives_[current]);
                check(current);
            }
        }
        result_.pivot_flops = flops_done_ + tab_.pivot_flops();
        return std::move(result_);
    }

private:
    // Row of objective k in the tableau.
    std::size_t row_of(std::size_t k) const { return opt_.check_all_objectives ? k : 0; }

    std::vector<std::vector<double>> carried(std::size_t current) const {
        if (opt_.check_all_objectives) return objectives_;
        return {objectives_[current]};
    }

    // The start tableau is factorized once and copied on every reset.
    void reset_tableau(std::size_t current) {
        flops_done_ += tab_.pivot_flops();
        if (!initial_) {
            initial_ = lp::Tableau(lp_.a(), lp_.b(), start_, carried(current));
            initial_->set_skip_zero_rows(opt_.skip_zero_rows);
            tab_ = *initial_;
        } else {
            tab_ = *initial_;
            if (!opt_.check_all_objectives) tab_.set_objective(0, objectives_[current]);
        }
        since_refactor_ = 0;
    }

    bool is_optimal(std::size_t k) const {
        return !lp::select_pivot_column(tab_.relative_costs(row_of(k)), rules_[k].optimality_tol);
    }

    // Marks objectives optimal at the current vertex and records the vertex.
    void check(std::size_t current) {
        std::vector<std::size_t> fresh;
        if (opt_.check_all_objectives) {
            for (std::size_t k = 0; k < objectives_.size(); ++k)
                if (!result_.success[k] && is_optimal(k)) fresh.push_back(k);
        } else if (!result_.success[current] && is_optimal(current)) {
            fresh.push_back(current);
        }
        const bool optimal_here = !fresh.empty();
        if (!optimal_here && !opt_.record_intermediaries) return;

        const auto& cols = result_.directions.interest_columns;
        std::vector<double> proj(cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i) proj[i] = clean(tab_.value_of(cols[i]));
        double cost = 0.0;
        for (std::size_t r = 0; r < tab_.num_constraints(); ++r) {
            const std::size_t j = tab_.basis().indices[r];
            if (j < b_.base.cols()) cost += b_.base.c()[j] * clean(tab_.rhs(r));
        }
        std::vector<double> full;
        if (opt_.keep_full_vertices) {
            full = tab_.vertex();
            for (double& v : full) v = clean(v);
        }
        result_.store.insert(proj, cost,
                             optimal_here ? VertexTag::kOptimal : VertexTag::kIntermediary, full);
        for (std::size_t k : fresh) {
            result_.success[k] = true;
            result_.objective_order.push_back(k);
            result_.first_optimal_projection[k] = proj;
            result_.first_optimal_cost[k] = cost;
            if (opt_.keep_full_vertices) result_.first_optimal_vertex[k] = full;
        }
    }

    void optimize(std::size_t k) {
        result_.active_sequence.push_back(k);
        lp::PivotSelector selector(rules_[k]);
        const std::size_t row = row_of(k);
        std::size_t pivots = 0;
        for (;;) {
            auto col = selector.column(tab_, row);
            if (!col) break;
            auto prow = selector.row(tab_, *col);
            if (!prow) {
                fail(ErrorCode::kUnbounded,
                     "objective " + std::to_string(k) +
                         " is unbounded over the budgeted polytope (model error)");
            }
            if (pivots >= cap_) {
                fail(ErrorCode::kIterationLimit,
                     "objective " + std::to_string(k) + " not optimal after " +
                         std::to_string(cap_) + " pivots");
            }
            const double before = tab_.objective_value(row);
            tab_.pivot(*col, *prow);
            ++pivots;
            selector.record(before, tab_.objective_value(row));
            if (opt_.refactor_interval && ++since_refactor_ >= opt_.refactor_interval) {
                tab_.refactor(lp_.a(), lp_.b(), carried(k));
                since_refactor_ = 0;
            }
            check(k);
        }
        // Optimal for k at the current vertex; the flag may already be set.
        if (!result_.success[k]) check(k);
        result_.pivots_per_objective[k] += pivots;
        result_.total_pivots += pivots;
    }

    static double clean(double v) { return v < 0.0 && v > -lp::kFeasibilityTol ? 0.0 : v; }

    const BudgetedLP& b_;
    const FunplexOptions& opt_;
    const lp::StandardFormLP& lp_;
    lp::Basis start_;
    std::vector<std::vector<double>> objectives_;
    std::vector<lp::PivotRules> rules_;
    lp::Tableau tab_;
    std::optional<lp::Tableau> initial_;
    FunplexResult result_;
    std::size_t cap_ = 0;
    std::size_t since_refactor_ = 0;
    std::uint64_t flops_done_ = 0;
};

} // namespace

FunplexResult run_funplex(const BudgetedLP& budgeted, std::span<const std::size_t> interest_columns,
                          std::span<const double> fallback_scales, Rng& rng,
                          const FunplexOptions& options, const DirectionSet* directions,
                          const lp::Basis* phase_one_basis) {
    DirectionSet set;
    if (directions) {
        set = *directions;
        set.validate();
    } else {
        require(!interest_columns.empty(), "no interest columns");
        std::vector<std::size_t> cols(interest_columns.begin(), interest_columns.end());
        std::vector<double> scales(cols.size(), 1.0);
        if (options.scale_variables) {
            scales = characteristic_scales(budgeted.optimal_values(cols), fallback_scales);
        }
        set = generate_directions(options.n_objectives, std::move(scales), std::move(cols), rng);
    }
    for (std::size_t c : set.interest_columns)
        require(c < budgeted.base.cols(), "interest column outside the original LP");

    lp::Basis start;
    if (options.warm_start) {
        start = budgeted.optimal_basis;
    } else if (phase_one_basis) {
        start = *phase_one_basis;
    } else {
        start = lp::phase_one(budgeted.lp, options.rules);
    }
    return FunplexRun(budgeted, options, std::move(set), std::move(start)).run();
}

} // namespace nearopt::mga
