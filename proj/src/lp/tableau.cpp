#include "nearopt/lp/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nearopt/error.hpp"
#include "nearopt/rng.hpp"

namespace nearopt::lp {

Tableau::Tableau(const DenseMatrix& a, std::span<const double> b, const Basis& basis,
                 std::span<const std::vector<double>> objectives)
    : m_(a.rows()), n_(a.cols()), basis_(basis) {
    require(b.size() == m_, "rhs length != rows");
    require(basis_.size() == m_, "basis has " + std::to_string(basis_.size()) +
                                     " indices, expected " + std::to_string(m_));
    std::vector<bool> seen(n_, false);
    for (std::size_t j : basis_.indices) {
        require(j < n_, "basis index " + std::to_string(j) + " out of range");
        require(!seen[j], "duplicate basis index " + std::to_string(j));
        seen[j] = true;
    }
    factorize(a, b);
    for (const auto& costs : objectives) add_objective(costs);
}

void Tableau::factorize(const DenseMatrix& a, std::span<const double> b) {
    const std::size_t width = n_ + 1;
    DenseMatrix body(m_, width);
    for (std::size_t r = 0; r < m_; ++r) {
        auto src = a.row(r);
        auto dst = body.row(r);
        std::copy(src.begin(), src.end(), dst.begin());
        dst[n_] = b[r];
    }
    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t col = basis_.indices[i];
        std::size_t best = i;
        double best_abs = 0.0;
        double col_scale = 0.0;
        for (std::size_t r = 0; r < m_; ++r) col_scale = std::max(col_scale, std::abs(a(r, col)));
        for (std::size_t r = i; r < m_; ++r) {
            if (std::abs(body(r, col)) > best_abs) {
                best_abs = std::abs(body(r, col));
                best = r;
            }
        }
        if (best_abs <= 1e-11 * std::max(1.0, col_scale)) {
            fail(ErrorCode::kNumerical, "singular basis matrix at column " + std::to_string(col));
        }
        body.swap_rows(i, best);
        auto prow = body.row(i);
        const double p = prow[col];
        for (double& v : prow) v /= p;
        prow[col] = 1.0;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == i) continue;
            auto row = body.row(r);
            const double f = row[col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
            row[col] = 0.0;
        }
    }
    // Keep any objective rows already present.
    if (body_.rows() > m_) {
        for (std::size_t k = m_; k < body_.rows(); ++k) body.append_row(body_.row(k));
    }
    body_ = std::move(body);
    rebuild_row_index();
    perturb_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        perturb_[i] = 1.0 + static_cast<double>(mix_seed(i) >> 11) * 0x1.0p-53;
    }
}

void Tableau::rebuild_row_index() {
    row_of_.assign(n_, -1);
    for (std::size_t i = 0; i < m_; ++i) row_of_[basis_.indices[i]] = static_cast<std::ptrdiff_t>(i);
}

std::optional<std::size_t> Tableau::basic_row(std::size_t col) const noexcept {
    if (col >= n_ || row_of_[col] < 0) return std::nullopt;
    return static_cast<std::size_t>(row_of_[col]);
}

std::vector<double> Tableau::vertex() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) x[basis_.indices[i]] = body_(i, n_);
    return x;
}

double Tableau::value_of(std::size_t col) const noexcept {
    auto r = basic_row(col);
    return r ? body_(*r, n_) : 0.0;
}

void Tableau::fill_objective_row(std::size_t k, std::span<const double> costs) {
    auto row = body_.row(m_ + k);
    std::copy(costs.begin(), costs.end(), row.begin());
    row[n_] = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
        const double cb = costs[basis_.indices[i]];
        if (cb == 0.0) continue;
        auto src = body_.row(i);
        for (std::size_t j = 0; j <= n_; ++j) row[j] -= cb * src[j];
    }
    for (std::size_t j : basis_.indices) row[j] = 0.0;
}

void Tableau::set_objective(std::size_t k, std::span<const double> costs) {
    require(k < num_objectives(), "objective index out of range");
    require(costs.size() == n_, "cost length != columns");
    fill_objective_row(k, costs);
}

void Tableau::add_objective(std::span<const double> costs) {
    require(costs.size() == n_, "cost length != columns");
    std::vector<double> zeros(n_ + 1, 0.0);
    body_.append_row(zeros);
    fill_objective_row(num_objectives() - 1, costs);
}

void Tableau::pivot(std::size_t col, std::size_t row) {
    require(col < n_ && row < m_, "pivot position out of range");
    const double p = body_(row, col);
    if (std::abs(p) < kFeasibilityTol) {
        fail(ErrorCode::kNumerical, "pivot element " + std::to_string(p) + " below tolerance");
    }
    const std::size_t width = n_ + 1;
    auto prow = body_.row(row);
    for (double& v : prow) v /= p;
    prow[col] = 1.0;
    perturb_[row] /= p;
    std::uint64_t flops = width;
    for (std::size_t r = 0; r < body_.rows(); ++r) {
        if (r == row) continue;
        auto target = body_.row(r);
        const double f = target[col];
        if (r < m_) perturb_[r] -= f * perturb_[row];
        if (f == 0.0 && skip_zero_rows_) continue;
        for (std::size_t j = 0; j < width; ++j) target[j] -= f * prow[j];
        target[col] = 0.0;
        flops += 2 * width;
    }
    const std::size_t leaving = basis_.indices[row];
    row_of_[leaving] = -1;
    row_of_[col] = static_cast<std::ptrdiff_t>(row);
    basis_.indices[row] = col;
    ++pivots_;
    pivot_flops_ += flops;
}

void Tableau::refactor(const DenseMatrix& a, std::span<const double> b,
                       std::span<const std::vector<double>> objectives) {
    require(objectives.size() == num_objectives(), "objective count mismatch on refactor");
    const std::size_t k = num_objectives();
    body_ = DenseMatrix();
    factorize(a, b);
    std::vector<double> zeros(n_ + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) body_.append_row(zeros);
    for (std::size_t i = 0; i < k; ++i) fill_objective_row(i, objectives[i]);
}

} // namespace nearopt::lp
