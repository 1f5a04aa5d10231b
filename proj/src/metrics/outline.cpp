#include "nearopt/metrics/outline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nearopt/error.hpp"

namespace nearopt::metrics {

namespace {

using Point2 = std::array<double, 2>;

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<Point2> monotone_chain(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    double span = 0.0;
    for (const auto& p : pts) span = std::max({span, std::abs(p[0]), std::abs(p[1])});
    const double tol = 1e-12 * span * span;

    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= tol) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

ProjectionOutline outline_of(std::vector<Point2> pts, std::array<std::size_t, 2> dims) {
    ProjectionOutline out;
    out.dims = dims;
    out.vertices = monotone_chain(std::move(pts));
    out.degenerate = out.vertices.size() < 3;
    return out;
}

} // namespace

double ProjectionOutline::area() const noexcept {
    if (vertices.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % vertices.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * std::abs(twice);
}

ProjectionOutline projection_outline(const PointCloud& cloud, std::array<std::size_t, 2> dims) {
    cloud.validate();
    require(cloud.points.size() >= 3, "projection outline needs at least 3 points");
    require(dims[0] < cloud.dimension && dims[1] < cloud.dimension && dims[0] != dims[1],
            "invalid projection dimensions");
    std::vector<Point2> pts;
    pts.reserve(cloud.points.size());
    for (const auto& p : cloud.points) pts.push_back({p[dims[0]], p[dims[1]]});
    return outline_of(std::move(pts), dims);
}

ProjectionOutline planar_reference(const mga::BudgetedLP& budgeted,
                                   std::array<std::size_t, 2> columns,
                                   std::array<double, 2> scales,
                                   const PlanarReferenceOptions& options,
                                   const lp::Basis* start) {
    require(options.directions >= 8, "planar reference needs K >= 8");
    require(columns[0] < budgeted.lp.cols() && columns[1] < budgeted.lp.cols() &&
                columns[0] != columns[1],
            "invalid planar reference columns");
    require(scales[0] > 0.0 && scales[1] > 0.0, "scales must be positive");
    const lp::Basis basis = start ? *start : lp::phase_one(budgeted.lp, options.solve.rules);

    std::vector<Point2> pts;
    pts.reserve(options.directions);
    std::vector<double> c(budgeted.lp.cols(), 0.0);
    for (std::size_t k = 0; k < options.directions; ++k) {
        const double t =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(options.directions);
        c[columns[0]] = std::cos(t) / scales[0];
        c[columns[1]] = std::sin(t) / scales[1];
        auto r = lp::solve(budgeted.lp, options.solve, c, &basis);
        if (r.status != lp::SolveStatus::kOptimal)
            fail(r.status == lp::SolveStatus::kUnbounded ? ErrorCode::kUnbounded
                                                         : ErrorCode::kInfeasible,
                 std::string("planar reference solve: ") + lp::to_string(r.status));
        pts.push_back({r.vertex[columns[0]], r.vertex[columns[1]]});
    }
    return outline_of(std::move(pts), {0, 1});
}

} // namespace nearopt::metrics
