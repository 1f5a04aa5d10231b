#include "doctest.h"

#include <cmath>
#include <random>

#include "nearopt/error.hpp"
#include "nearopt/metrics/hull.hpp"
#include "nearopt/metrics/indicators.hpp"
#include "nearopt/metrics/outline.hpp"
#include "nearopt/mga/budget.hpp"
#include "toy_models.hpp"

using namespace nearopt;
using namespace nearopt::metrics;

namespace {

PointCloud cloud(std::size_t d, std::vector<std::vector<double>> pts) {
    return PointCloud{d, std::move(pts), CloudSource::kOther};
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t d, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    PointCloud c{d, {}, CloudSource::kOther};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> p(d);
        for (auto& v : p) v = u(rng);
        c.points.push_back(std::move(p));
    }
    return c;
}

// Every corner of [0, 1]^d.
PointCloud cube(std::size_t d) {
    PointCloud c{d, {}, CloudSource::kOther};
    for (std::size_t mask = 0; mask < (1u << d); ++mask) {
        std::vector<double> p(d);
        for (std::size_t i = 0; i < d; ++i) p[i] = (mask >> i) & 1u;
        c.points.push_back(std::move(p));
    }
    return c;
}

} // namespace

TEST_CASE("hull volume of the unit square and the standard simplex") {
    auto sq = exact_hull_volume(cloud(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(sq.volume == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sq.facets == 4);
    CHECK_FALSE(sq.degenerate);

    auto simplex = exact_hull_volume(cloud(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(simplex.volume == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(simplex.facets == 4);

    for (std::size_t d = 1; d <= 5; ++d) {
        auto c = cube(d);
        c.points.push_back(std::vector<double>(d, 0.5));
        auto r = exact_hull_volume(c);
        CHECK(r.volume == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.points == (1u << d) + 1);
    }
}

TEST_CASE("flat clouds have zero volume and a degeneracy flag") {
    auto line = exact_hull_volume(cloud(2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
    CHECK(line.volume == 0.0);
    CHECK(line.degenerate);
    auto plane = exact_hull_volume(cloud(3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}));
    CHECK(plane.degenerate);
    auto tilted = exact_hull_volume(cloud(3, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 2}, {2, 3, 5}}));
    CHECK(tilted.degenerate);
    CHECK(tilted.volume == 0.0);
    auto mc = monte_carlo_hull_volume(cloud(3, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 2}}), 100, 1);
    CHECK(mc.degenerate);
    CHECK_THROWS_AS(exact_hull_volume(cloud(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})), Error);
    CHECK_THROWS_AS(exact_hull_volume(cloud(2, {{0, 0}, {1}, {0, 1}})), Error);
}

TEST_CASE("hull volume invariances") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10; ++t) {
        const std::size_t d = 2 + t % 4;
        auto c = random_cloud(rng, d, 60);
        const double v = exact_hull_volume(c).volume;
        REQUIRE(v > 0.0);

        auto shifted = c;
        for (auto& p : shifted.points)
            for (std::size_t i = 0; i < d; ++i) p[i] += 3.5 - static_cast<double>(i);
        CHECK(std::abs(exact_hull_volume(shifted).volume - v) <= 1e-9 * v);

        auto scaled = c;
        for (auto& p : scaled.points) p[1] *= -2.5;
        CHECK(std::abs(exact_hull_volume(scaled).volume - 2.5 * v) <= 1e-9 * 2.5 * v);

        auto permuted = c;
        std::shuffle(permuted.points.begin(), permuted.points.end(), rng);
        permuted.points.push_back(permuted.points[3]);
        permuted.points.push_back(permuted.points[7]);
        CHECK(std::abs(exact_hull_volume(permuted).volume - v) <= 1e-9 * v);

        auto grown = c;
        double prev = v;
        for (int k = 0; k < 20; ++k) {
            auto extra = random_cloud(rng, d, 1);
            for (auto& x : extra.points[0]) x *= 1.1;
            grown.points.push_back(extra.points[0]);
            const double now = exact_hull_volume(grown).volume;
            CHECK(now >= prev * (1.0 - 1e-12));
            prev = now;
        }
    }
}

TEST_CASE("exact and Monte Carlo volumes agree on random 4D clouds") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 20; ++t) {
        auto c = random_cloud(rng, 4, 25 + 5 * static_cast<std::size_t>(t));
        const auto exact = exact_hull_volume(c);
        const auto mc = monte_carlo_hull_volume(c, 20000, 100 + static_cast<std::uint64_t>(t));
        CHECK(mc.method == VolumeMethod::kMonteCarlo);
        REQUIRE(mc.standard_error > 0.0);
        CHECK(std::abs(mc.volume - exact.volume) <= 3.0 * mc.standard_error);
    }
}

TEST_CASE("hull_volume picks the method from the limits") {
    auto c = cube(3);
    CHECK(hull_volume(c).method == VolumeMethod::kExact);
    HullOptions o;
    o.exact_max_dimension = 2;
    o.samples = 2000;
    auto r = hull_volume(c, o);
    CHECK(r.method == VolumeMethod::kMonteCarlo);
    CHECK(r.volume == doctest::Approx(1.0));
    CHECK(r.standard_error == 0.0);
}

TEST_CASE("projection outlines") {
    auto sq = projection_outline(cloud(3, {{0, 0, 5}, {1, 0, 2}, {1, 1, 1}, {0, 1, 0}, {0.5, 0.5, 9}}),
                                 {0, 1});
    REQUIRE(sq.vertices.size() == 4);
    CHECK(sq.area() == doctest::Approx(1.0));
    CHECK_FALSE(sq.degenerate);
    double twice = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& a = sq.vertices[i];
        const auto& b = sq.vertices[(i + 1) % 4];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    CHECK(twice > 0.0);  // counter-clockwise

    auto col = projection_outline(cloud(2, {{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}}), {0, 1});
    CHECK(col.degenerate);
    CHECK(col.area() == 0.0);

    auto mid = projection_outline(cloud(2, {{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}), {0, 1});
    CHECK(mid.vertices.size() == 4);

    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        auto c = random_cloud(rng, 4, 40);
        auto o = projection_outline(c, {1, 3});
        PointCloud flat{2, {}, CloudSource::kOther};
        for (const auto& p : c.points) flat.points.push_back({p[1], p[3]});
        CHECK(std::abs(o.area() - exact_hull_volume(flat).volume) <= 1e-9 * o.area());
    }
}

TEST_CASE("planar reference on the budgeted demand box") {
    // min x1 + 2 x2 on the unit box with x1 + x2 >= 1, 10 % slack: the
    // near-optimal set is the triangle (1, 0), (0.9, 0.1), (1, 0.05).
    auto b = mga::build_budgeted_lp(toy::demand_box(1.0, 2.0, 1.0), 0.1);
    PlanarReferenceOptions o;
    o.directions = 8;
    auto ref = planar_reference(b, {0, 1}, {1.0, 1.0}, o);
    CHECK(ref.vertices.size() == 3);
    CHECK(ref.area() == doctest::Approx(0.5 * 0.1 * 0.05));

    auto box = mga::build_budgeted_lp(toy::unit_box(0.0, 0.0), 0.0);
    auto square = planar_reference(box, {0, 1}, {1.0, 1.0}, o);
    CHECK(square.vertices.size() == 4);
    CHECK(square.area() == doctest::Approx(1.0));

    std::mt19937_64 rng(6);
    auto lp = toy::random_bounded_lp(rng, 6, 4, 2);
    auto rb = mga::build_budgeted_lp(lp, 0.3);
    double prev = 0.0;
    for (std::size_t k : {8u, 16u, 32u, 64u}) {
        o.directions = k;
        const double a = planar_reference(rb, {0, 1}, {1.0, 2.0}, o).area();
        CHECK(a >= prev * (1.0 - 1e-12));
        prev = a;
    }
    o.directions = 4;
    CHECK_THROWS_AS(planar_reference(rb, {0, 1}, {1.0, 1.0}, o), Error);
}

TEST_CASE("indicators") {
    std::vector<MethodVolume> v{{"funplex", 2.0}, {"spores", 1.46}, {"random_directions", 1.6}};
    auto n = normalized_volumes(v);
    CHECK(n[0].volume == 1.0);
    CHECK(n[1].volume == doctest::Approx(0.73));
    CHECK(n[2].volume == doctest::Approx(0.80));
    std::vector<MethodVolume> same{{"funplex", 3.0}, {"spores", 3.0}};
    CHECK(normalized_volumes(same)[1].volume == 1.0);
    CHECK_THROWS_AS(normalized_volumes(std::vector<MethodVolume>{{"spores", 1.0}}), Error);

    CHECK(volume_gain(1.0, 0.73) == doctest::Approx(1.37).epsilon(0.005));
    CHECK(volume_gain(1.0, 0.80) == doctest::Approx(1.25));
    CHECK(volume_gain(2.0, 2.0) == 1.0);
    CHECK_THROWS_AS(volume_gain(1.0, 0.0), Error);

    CHECK(efficiency_gain(19134, 1858) == doctest::Approx(10.30).epsilon(0.001));
    CHECK(efficiency_gain(14364, 1858) == doctest::Approx(7.73).epsilon(0.001));
    CHECK(efficiency_gain(5, 5) == 1.0);
    CHECK_THROWS_AS(efficiency_gain(5, 0), Error);

    std::vector<double> x{1, 2, 4, 8, 16};
    std::vector<double> lin(x);
    std::vector<double> root;
    for (double xi : x) root.push_back(std::sqrt(xi));
    CHECK(scaling_slope(x, lin) == doctest::Approx(1.0));
    CHECK(scaling_slope(x, root) == doctest::Approx(0.5));
    CHECK_THROWS_AS(scaling_slope(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
    CHECK_THROWS_AS(scaling_slope(std::vector<double>{1, 2, 0}, std::vector<double>{1, 2, 3}), Error);
}
