#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "nearopt/lp/simplex.hpp"
#include "nearopt/metrics/hull.hpp"
#include "nearopt/mga/budget.hpp"

namespace nearopt::metrics {

struct ProjectionOutline {
    std::array<std::size_t, 2> dims{0, 1};
    std::vector<std::array<double, 2>> vertices;  // counter-clockwise
    bool degenerate = false;

    double area() const noexcept;
};

/// 2D convex hull (monotone chain) of the points projected onto dims.
ProjectionOutline projection_outline(const PointCloud& cloud, std::array<std::size_t, 2> dims);

struct PlanarReferenceOptions {
    std::size_t directions = 720;  // K
    lp::SolveOptions solve;
};

/// Outline of the optima of K objectives cos(t) x_i / L_i + sin(t) x_j / L_j,
/// t = 2 pi k / K, over the budgeted LP. `columns` and `scales` give the LP
/// columns and characteristic scales of the two plotted variables. The
/// outline is in raw column units.
ProjectionOutline planar_reference(const mga::BudgetedLP& budgeted,
                                   std::array<std::size_t, 2> columns,
                                   std::array<double, 2> scales,
                                   const PlanarReferenceOptions& options = {},
                                   const lp::Basis* start = nullptr);

} // namespace nearopt::metrics
