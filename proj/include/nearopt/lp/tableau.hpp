#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nearopt/lp/dense_matrix.hpp"
#include "nearopt/lp/standard_form.hpp"

namespace nearopt::lp {

inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kOptimalityTol = 1e-7;

struct Basis {
    std::vector<std::size_t> indices;  // basic column of each constraint row

    std::size_t size() const noexcept { return indices.size(); }
    bool operator==(const Basis&) const = default;
};

/// Dense Simplex tableau with one or more objective rows.
///
/// Layout: rows [0, m) hold B^-1 A | B^-1 b, rows [m, m + k) hold the
/// relative-cost vector of each objective followed by minus its value at the
/// current vertex. Every pivot updates all m + k rows.
class Tableau {
public:
    Tableau() = default;

    /// Factorizes the basis columns of A by Gauss-Jordan elimination and
    /// appends one objective row per cost vector. Throws kNumerical when the
    /// basis matrix is singular.
    Tableau(const DenseMatrix& a, std::span<const double> b, const Basis& basis,
            std::span<const std::vector<double>> objectives);

    std::size_t num_constraints() const noexcept { return m_; }
    std::size_t num_columns() const noexcept { return n_; }
    std::size_t num_objectives() const noexcept { return body_.rows() - m_; }

    double entry(std::size_t row, std::size_t col) const noexcept { return body_(row, col); }
    double rhs(std::size_t row) const noexcept { return body_(row, n_); }
    // B^-1 u for a fixed positive vector u drawn at the last factorization.
    // Breaks ratio ties as an infinitesimal perturbation of b would.
    double perturbation(std::size_t row) const noexcept { return perturb_[row]; }
    std::span<const double> constraint_row(std::size_t row) const noexcept {
        return body_.row(row).first(n_);
    }
    std::span<const double> relative_costs(std::size_t k) const noexcept {
        return body_.row(m_ + k).first(n_);
    }
    double objective_value(std::size_t k) const noexcept { return -body_(m_ + k, n_); }

    const Basis& basis() const noexcept { return basis_; }
    // Row whose basic variable is `col`, if `col` is basic.
    std::optional<std::size_t> basic_row(std::size_t col) const noexcept;
    bool is_basic(std::size_t col) const noexcept { return basic_row(col).has_value(); }

    std::vector<double> vertex() const;
    double value_of(std::size_t col) const noexcept;

    /// Elementary row operations that make `col` basic in `row`. Throws
    /// kNumerical when the pivot element is below kFeasibilityTol.
    void pivot(std::size_t col, std::size_t row);

    /// Replaces objective row k with the relative costs of `costs` against the
    /// current basis.
    void set_objective(std::size_t k, std::span<const double> costs);
    void add_objective(std::span<const double> costs);

    /// Rebuilds the constraint block from the original data for the current
    /// basis and recomputes every objective row from `objectives`. Clears
    /// accumulated rounding error.
    void refactor(const DenseMatrix& a, std::span<const double> b,
                  std::span<const std::vector<double>> objectives);

    // When set, rows whose multiplier in the pivot column is exactly zero are
    // skipped. The result is bit-identical; only the operation count changes.
    void set_skip_zero_rows(bool skip) noexcept { skip_zero_rows_ = skip; }

    std::uint64_t pivots() const noexcept { return pivots_; }
    // Floating-point multiply/add/divide operations performed by pivot().
    std::uint64_t pivot_flops() const noexcept { return pivot_flops_; }

    const DenseMatrix& body() const noexcept { return body_; }

private:
    void factorize(const DenseMatrix& a, std::span<const double> b);
    void fill_objective_row(std::size_t k, std::span<const double> costs);
    void rebuild_row_index();

    std::size_t m_ = 0;
    std::size_t n_ = 0;
    DenseMatrix body_;
    Basis basis_;
    std::vector<std::ptrdiff_t> row_of_;  // column -> basic row or -1
    std::vector<double> perturb_;
    std::uint64_t pivots_ = 0;
    std::uint64_t pivot_flops_ = 0;
    bool skip_zero_rows_ = true;
};

} // namespace nearopt::lp
