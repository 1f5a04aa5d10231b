#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nearopt/lp/dense_matrix.hpp"

namespace nearopt::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct RowSpec {
    std::vector<double> coeffs;
    Relation relation = Relation::kLessEqual;
    double rhs = 0.0;
    std::string name;
};

/// min c'x  s.t.  Ax = b, x >= 0, with b >= 0 and A of full row rank.
///
/// Construction validates the data, flips rows with negative right-hand side
/// and removes rows that are linear combinations of earlier ones. A redundant
/// row whose right-hand side disagrees with the combination makes the system
/// inconsistent and is reported as infeasible.
class StandardFormLP {
public:
    StandardFormLP() = default;
    StandardFormLP(DenseMatrix a, std::vector<double> b, std::vector<double> c,
                   std::vector<std::string> column_names = {},
                   std::vector<std::size_t> interest_columns = {},
                   std::vector<std::string> row_names = {});

    std::size_t rows() const noexcept { return a_.rows(); }
    std::size_t cols() const noexcept { return a_.cols(); }

    const DenseMatrix& a() const noexcept { return a_; }
    const std::vector<double>& b() const noexcept { return b_; }
    const std::vector<double>& c() const noexcept { return c_; }
    const std::vector<std::string>& column_names() const noexcept { return column_names_; }
    const std::vector<std::string>& row_names() const noexcept { return row_names_; }
    const std::vector<std::size_t>& interest_columns() const noexcept { return interest_; }
    // Names of rows removed as redundant during construction.
    const std::vector<std::string>& dropped_rows() const noexcept { return dropped_rows_; }

    void set_interest_columns(std::vector<std::size_t> columns);
    std::size_t column_index(const std::string& name) const;

    double cost_of(std::span<const double> x) const;
    // Largest |Ax - b| and largest negative part of x.
    double max_residual(std::span<const double> x) const;
    double max_bound_violation(std::span<const double> x) const;

    /// Appends an equality row with a fresh nonnegative slack column:
    /// coeffs'x + s = rhs. Used for the near-optimality budget.
    StandardFormLP with_slack_row(std::span<const double> coeffs, double rhs,
                                  const std::string& row_name,
                                  const std::string& slack_name) const;

private:
    void eliminate_redundant_rows();

    DenseMatrix a_;
    std::vector<double> b_;
    std::vector<double> c_;
    std::vector<std::string> column_names_;
    std::vector<std::string> row_names_;
    std::vector<std::size_t> interest_;
    std::vector<std::string> dropped_rows_;
};

/// Converts inequality rows to equalities by appending slack (<=) or surplus
/// (>=) columns with zero cost. Slack columns follow the structural columns in
/// row order.
StandardFormLP build_standard_form(std::span<const RowSpec> rows, std::span<const double> costs,
                                   std::vector<std::string> names = {});

} // namespace nearopt::lp
