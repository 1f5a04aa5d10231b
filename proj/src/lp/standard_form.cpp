#include "nearopt/lp/standard_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "nearopt/error.hpp"

namespace nearopt::lp {
namespace {

constexpr double kRankTol = 1e-9;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace

StandardFormLP::StandardFormLP(DenseMatrix a, std::vector<double> b, std::vector<double> c,
                               std::vector<std::string> column_names,
                               std::vector<std::size_t> interest_columns,
                               std::vector<std::string> row_names)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)),
      column_names_(std::move(column_names)), row_names_(std::move(row_names)) {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    require(n > 0, "LP has no columns");
    require(b_.size() == m, "rhs length " + std::to_string(b_.size()) + " != rows " +
                                std::to_string(m));
    require(c_.size() == n, "cost length " + std::to_string(c_.size()) + " != columns " +
                                std::to_string(n));
    for (std::size_t r = 0; r < m; ++r) require(all_finite(a_.row(r)), "non-finite coefficient");
    require(all_finite(b_), "non-finite rhs");
    require(all_finite(c_), "non-finite cost");

    if (column_names_.empty()) {
        column_names_.reserve(n);
        for (std::size_t j = 0; j < n; ++j) column_names_.push_back("x" + std::to_string(j + 1));
    }
    require(column_names_.size() == n, "column name count != columns");
    if (row_names_.empty()) {
        row_names_.reserve(m);
        for (std::size_t r = 0; r < m; ++r) row_names_.push_back("r" + std::to_string(r + 1));
    }
    require(row_names_.size() == m, "row name count != rows");

    for (std::size_t r = 0; r < m; ++r) {
        if (b_[r] < 0.0) {
            for (double& v : a_.row(r)) v = -v;
            b_[r] = -b_[r];
        }
    }
    set_interest_columns(std::move(interest_columns));
    eliminate_redundant_rows();
}

void StandardFormLP::set_interest_columns(std::vector<std::size_t> columns) {
    std::set<std::size_t> seen;
    for (std::size_t j : columns) {
        require(j < cols(), "interest column " + std::to_string(j) + " out of range");
        require(seen.insert(j).second, "duplicate interest column " + std::to_string(j));
    }
    interest_ = std::move(columns);
}

std::size_t StandardFormLP::column_index(const std::string& name) const {
    auto it = std::find(column_names_.begin(), column_names_.end(), name);
    require(it != column_names_.end(), "unknown column '" + name + "'");
    return static_cast<std::size_t>(it - column_names_.begin());
}

// Incremental row echelon form over the rows in their original order. A row
// that reduces to zero is a combination of earlier rows.
void StandardFormLP::eliminate_redundant_rows() {
    const std::size_t m = rows();
    const std::size_t n = cols();
    std::vector<std::vector<double>> echelon;
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> keep;
    std::vector<double> work(n + 1);

    for (std::size_t r = 0; r < m; ++r) {
        auto src = a_.row(r);
        std::copy(src.begin(), src.end(), work.begin());
        work[n] = b_[r];
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(work[j]));
        scale = std::max(scale, std::abs(work[n]));
        if (scale == 0.0) {
            dropped_rows_.push_back(row_names_[r]);
            continue;
        }
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            const double f = work[pivot_col[e]];
            if (f == 0.0) continue;
            const auto& er = echelon[e];
            for (std::size_t j = 0; j <= n; ++j) work[j] -= f * er[j];
            work[pivot_col[e]] = 0.0;
        }
        std::size_t best = n;
        double best_abs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(work[j]) > best_abs) {
                best_abs = std::abs(work[j]);
                best = j;
            }
        }
        if (best_abs <= kRankTol * scale) {
            if (std::abs(work[n]) > kRankTol * std::max(1.0, scale)) {
                fail(ErrorCode::kInfeasible,
                     "row '" + row_names_[r] + "' contradicts a combination of earlier rows");
            }
            std::fprintf(stderr, "warning: dropping redundant row '%s'\n",
                         row_names_[r].c_str());
            dropped_rows_.push_back(row_names_[r]);
            continue;
        }
        const double p = work[best];
        for (double& v : work) v /= p;
        work[best] = 1.0;
        echelon.push_back(work);
        pivot_col.push_back(best);
        keep.push_back(r);
    }

    if (keep.size() == m) return;
    DenseMatrix reduced(keep.size(), n);
    std::vector<double> b(keep.size());
    std::vector<std::string> names(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        auto src = a_.row(keep[i]);
        std::copy(src.begin(), src.end(), reduced.row(i).begin());
        b[i] = b_[keep[i]];
        names[i] = row_names_[keep[i]];
    }
    a_ = std::move(reduced);
    b_ = std::move(b);
    row_names_ = std::move(names);
}

double StandardFormLP::cost_of(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < cols(); ++j) s += c_[j] * x[j];
    return s;
}

double StandardFormLP::max_residual(std::span<const double> x) const {
    double worst = 0.0;
    for (std::size_t r = 0; r < rows(); ++r) {
        auto row = a_.row(r);
        double s = -b_[r];
        for (std::size_t j = 0; j < cols(); ++j) s += row[j] * x[j];
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

double StandardFormLP::max_bound_violation(std::span<const double> x) const {
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, -v);
    return worst;
}

StandardFormLP StandardFormLP::with_slack_row(std::span<const double> coeffs, double rhs,
                                              const std::string& row_name,
                                              const std::string& slack_name) const {
    require(coeffs.size() == cols(), "slack row length != columns");
    const std::size_t m = rows();
    const std::size_t n = cols();
    DenseMatrix a(m + 1, n + 1);
    for (std::size_t r = 0; r < m; ++r) {
        auto src = a_.row(r);
        std::copy(src.begin(), src.end(), a.row(r).begin());
    }
    std::copy(coeffs.begin(), coeffs.end(), a.row(m).begin());
    a(m, n) = 1.0;
    auto b = b_;
    b.push_back(rhs);
    auto c = c_;
    c.push_back(0.0);
    auto names = column_names_;
    names.push_back(slack_name);
    auto row_names = row_names_;
    row_names.push_back(row_name);
    return StandardFormLP(std::move(a), std::move(b), std::move(c), std::move(names), interest_,
                          std::move(row_names));
}

StandardFormLP build_standard_form(std::span<const RowSpec> rows, std::span<const double> costs,
                                   std::vector<std::string> names) {
    const std::size_t n0 = costs.size();
    require(n0 > 0, "no structural columns");
    require(names.empty() || names.size() == n0, "name count != cost length");
    if (names.empty()) {
        for (std::size_t j = 0; j < n0; ++j) names.push_back("x" + std::to_string(j + 1));
    }
    std::size_t slacks = 0;
    for (const auto& row : rows) {
        require(row.coeffs.size() == n0, "row '" + row.name + "' has " +
                                             std::to_string(row.coeffs.size()) +
                                             " coefficients, expected " + std::to_string(n0));
        if (row.relation != Relation::kEqual) ++slacks;
    }
    const std::size_t n = n0 + slacks;
    DenseMatrix a(rows.size(), n);
    std::vector<double> b(rows.size());
    std::vector<double> c(costs.begin(), costs.end());
    c.resize(n, 0.0);
    std::vector<std::string> row_names;
    std::size_t next = n0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::copy(row.coeffs.begin(), row.coeffs.end(), a.row(r).begin());
        b[r] = row.rhs;
        row_names.push_back(row.name.empty() ? "r" + std::to_string(r + 1) : row.name);
        if (row.relation == Relation::kEqual) continue;
        a(r, next) = row.relation == Relation::kLessEqual ? 1.0 : -1.0;
        names.push_back((row.relation == Relation::kLessEqual ? "slack_" : "surplus_") +
                        row_names.back());
        ++next;
    }
    return StandardFormLP(std::move(a), std::move(b), std::move(c), std::move(names), {},
                          std::move(row_names));
}

} // namespace nearopt::lp
