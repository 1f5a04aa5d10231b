#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

#include "lp_oracle.hpp"
#include "nearopt/error.hpp"
#include "nearopt/lp/lp_text.hpp"
#include "nearopt/lp/simplex.hpp"
#include "nearopt/lp/standard_form.hpp"
#include "nearopt/lp/tableau.hpp"

using namespace nearopt;
using namespace nearopt::lp;

namespace {

void check_tableau_invariants(const Tableau& t, const StandardFormLP& lp,
                              std::span<const double> costs) {
    const std::size_t m = t.num_constraints();
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t col = t.basis().indices[i];
        for (std::size_t r = 0; r < m; ++r)
            CHECK(std::abs(t.entry(r, col) - (r == i ? 1.0 : 0.0)) <= 1e-9);
        CHECK(std::abs(t.relative_costs(0)[col]) <= 1e-9);
    }
    auto x = t.vertex();
    double obj = 0.0;
    for (std::size_t j = 0; j < lp.cols(); ++j) obj += costs[j] * x[j];
    CHECK(std::abs(t.objective_value(0) - obj) <= 1e-9 * std::max(1.0, std::abs(obj)));
}

StandardFormLP segment_lp(std::vector<double> c) {
    DenseMatrix a(1, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 1.0;
    return StandardFormLP(std::move(a), {1.0}, std::move(c));
}

} // namespace

TEST_CASE("build_standard_form adds slack and surplus columns") {
    std::vector<RowSpec> rows{{{1.0, 1.0}, Relation::kLessEqual, 1.0, "cap"}};
    std::vector<double> c{1.0, 0.0};
    auto lp = build_standard_form(rows, c);
    CHECK(lp.cols() == 3);
    CHECK(lp.rows() == 1);
    CHECK(lp.a()(0, 2) == 1.0);
    CHECK(lp.c()[2] == 0.0);

    std::vector<RowSpec> ge{{{1.0}, Relation::kGreaterEqual, 2.0, "min"}};
    std::vector<double> c1{1.0};
    auto lp2 = build_standard_form(ge, c1);
    REQUIRE(lp2.cols() == 2);
    CHECK(lp2.a()(0, 0) == 1.0);
    CHECK(lp2.a()(0, 1) == -1.0);
    CHECK(lp2.b()[0] == 2.0);
    CHECK(lp2.column_names()[1] == "surplus_min");
}

TEST_CASE("standard form flips negative rhs and rejects bad data") {
    std::vector<RowSpec> rows{{{1.0, -1.0}, Relation::kEqual, -3.0, ""}};
    std::vector<double> c{0.0, 0.0};
    auto lp = build_standard_form(rows, c);
    CHECK(lp.b()[0] == 3.0);
    CHECK(lp.a()(0, 0) == -1.0);

    std::vector<RowSpec> short_row{{{1.0}, Relation::kEqual, 1.0, "bad"}};
    CHECK_THROWS_AS(build_standard_form(short_row, c), Error);

    std::vector<RowSpec> nan_row{{{1.0, std::nan("")}, Relation::kEqual, 1.0, ""}};
    CHECK_THROWS_AS(build_standard_form(nan_row, c), Error);
}

TEST_CASE("redundant rows are dropped, contradictory ones are infeasible") {
    std::vector<double> c{1.0, 1.0};
    std::vector<RowSpec> dup{{{1.0, 1.0}, Relation::kEqual, 1.0, "a"},
                             {{2.0, 2.0}, Relation::kEqual, 2.0, "b"}};
    auto lp = build_standard_form(dup, c);
    CHECK(lp.rows() == 1);
    REQUIRE(lp.dropped_rows().size() == 1);
    CHECK(lp.dropped_rows()[0] == "b");

    std::vector<RowSpec> clash{{{1.0, 0.0}, Relation::kEqual, 1.0, "a"},
                               {{1.0, 0.0}, Relation::kEqual, 2.0, "b"}};
    try {
        build_standard_form(clash, c);
        FAIL("expected infeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInfeasible);
    }
}

TEST_CASE("select_pivot_column follows Dantzig with lowest-index ties") {
    std::vector<double> opt{0.0, 2.0, 5.0};
    CHECK_FALSE(select_pivot_column(opt).has_value());
    std::vector<double> neg{-1.0, -3.0, 0.0};
    CHECK(select_pivot_column(neg) == 1u);
    std::vector<double> tie{-2.0, -2.0};
    CHECK(select_pivot_column(tie) == 0u);
    CHECK(select_pivot_column(neg, kOptimalityTol, true) == 0u);
    std::vector<double> tiny{-1e-8, 0.0};
    CHECK_FALSE(select_pivot_column(tiny).has_value());
}

TEST_CASE("optimality tolerance follows small cost magnitudes") {
    const std::vector<double> small{0.0, -2e-3, 1e-3};
    const std::vector<double> large{0.0, -40.0, 3.0};
    CHECK(scaled_for({}, small).optimality_tol == doctest::Approx(2e-10));
    CHECK(scaled_for({}, large).optimality_tol == kOptimalityTol);
    CHECK(scaled_for({}, std::vector<double>(3, 0.0)).optimality_tol == kOptimalityTol);
}

TEST_CASE("select_pivot_row ratio test") {
    // Columns: x (entering), s1, s2 basic.
    DenseMatrix a(2, 3);
    Basis basis{{1, 2}};
    std::vector<std::vector<double>> obj{{-1.0, 0.0, 0.0}};

    a(0, 0) = 1.0; a(0, 1) = 1.0;
    a(1, 0) = 2.0; a(1, 2) = 1.0;
    Tableau t(a, std::vector<double>{4.0, 4.0}, basis, obj);
    CHECK(select_pivot_row(t, 0) == 1u);

    DenseMatrix a2(2, 3);
    a2(0, 0) = -1.0; a2(0, 1) = 1.0;
    a2(1, 2) = 1.0;
    Tableau t2(a2, std::vector<double>{4.0, 4.0}, basis, obj);
    CHECK_FALSE(select_pivot_row(t2, 0).has_value());

    DenseMatrix a3(2, 3);
    a3(0, 0) = 1.0; a3(0, 1) = 1.0;
    a3(1, 0) = 1.0; a3(1, 2) = 1.0;
    Tableau t3(a3, std::vector<double>{0.0, 3.0}, basis, obj);
    CHECK(select_pivot_row(t3, 0) == 0u);
}

TEST_CASE("select_pivot_row breaks ratio ties by the perturbed ratio") {
    DenseMatrix a(2, 3);
    a(0, 0) = 1.0; a(0, 2) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 1.0;
    Basis basis{{2, 1}};
    std::vector<std::vector<double>> obj{{-1.0, 0.0, 0.0}};
    Tableau t(a, std::vector<double>{2.0, 2.0}, basis, obj);
    const std::size_t expected = t.perturbation(0) < t.perturbation(1) ? 0u : 1u;
    CHECK(select_pivot_row(t, 0) == expected);

    // A tied row with a negligible entry is passed over.
    DenseMatrix a2(2, 3);
    a2(0, 0) = 1e-4; a2(0, 2) = 1.0;
    a2(1, 0) = 1.0; a2(1, 1) = 1.0;
    Tableau t2(a2, std::vector<double>{0.0, 0.0}, basis, obj);
    CHECK(select_pivot_row(t2, 0) == 1u);
}

TEST_CASE("Beale's cycling example terminates under Dantzig pricing") {
    std::vector<RowSpec> rows{
        {{0.25, -8.0, -1.0, 9.0}, Relation::kLessEqual, 0.0, ""},
        {{0.5, -12.0, -0.5, 3.0}, Relation::kLessEqual, 0.0, ""},
        {{0.0, 0.0, 1.0, 0.0}, Relation::kLessEqual, 1.0, ""}};
    std::vector<double> c{-0.75, 20.0, -0.5, 6.0};
    auto lp = build_standard_form(rows, c);
    auto r = solve(lp, {});
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.objective_value == doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(oracle::solve(lp).objective == doctest::Approx(-1.25).epsilon(1e-12));
}

TEST_CASE("phase_one on a segment and on an inconsistent system") {
    auto lp = segment_lp({1.0, 0.0});
    Basis b = phase_one(lp);
    REQUIRE(b.size() == 1);
    auto t = build_tableau(lp, b);
    CHECK(t.rhs(0) == doctest::Approx(1.0));

    DenseMatrix a(2, 2);
    a(0, 0) = 1.0; a(0, 1) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 2.0;
    // x1 = -1, x2 = 2 is the unique solution: violates x >= 0.
    StandardFormLP infeasible(std::move(a), {1.0, 3.0}, {0.0, 0.0});
    try {
        phase_one(infeasible);
        FAIL("expected infeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInfeasible);
    }
    CHECK(solve(infeasible).status == SolveStatus::kInfeasible);
}

TEST_CASE("phase_one returns a feasible basis on 500 LPs with an interior point") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        auto gen = oracle::random_lp(rng, 0);
        Basis basis = phase_one(gen.lp);
        REQUIRE(basis.size() == gen.lp.rows());
        auto t = build_tableau(gen.lp, basis);
        for (std::size_t r = 0; r < t.num_constraints(); ++r) CHECK(t.rhs(r) >= -1e-9);
    }
}

TEST_CASE("build_tableau matches an independent linear solve") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto gen = oracle::random_lp(rng, 0);
        const auto& lp = gen.lp;
        Basis basis = phase_one(lp);
        auto t = build_tableau(lp, basis);
        const auto m = static_cast<Eigen::Index>(lp.rows());
        Eigen::MatrixXd bm(m, m);
        Eigen::VectorXd b(m);
        for (Eigen::Index r = 0; r < m; ++r) {
            b(r) = lp.b()[static_cast<std::size_t>(r)];
            for (Eigen::Index i = 0; i < m; ++i)
                bm(r, i) = lp.a()(static_cast<std::size_t>(r), basis.indices[static_cast<std::size_t>(i)]);
        }
        Eigen::VectorXd xb = bm.inverse() * b;
        for (Eigen::Index i = 0; i < m; ++i)
            CHECK(t.rhs(static_cast<std::size_t>(i)) == doctest::Approx(xb(i)).epsilon(1e-9));
        check_tableau_invariants(t, lp, lp.c());
    }
}

TEST_CASE("zero cost gives a zero objective row") {
    auto lp = segment_lp({0.0, 0.0});
    auto t = build_tableau(lp, phase_one(lp));
    for (double v : t.relative_costs(0)) CHECK(v == 0.0);
    CHECK(t.objective_value(0) == 0.0);
}

TEST_CASE("singular basis is rejected") {
    DenseMatrix a(2, 3);
    a(0, 0) = 1.0; a(0, 1) = 2.0; a(0, 2) = 1.0;
    a(1, 0) = 2.0; a(1, 1) = 4.0; a(1, 2) = 3.0;
    StandardFormLP lp(std::move(a), {1.0, 2.0}, {0.0, 0.0, 0.0});
    CHECK_THROWS_AS(build_tableau(lp, Basis{{0, 1}}), Error);
}

TEST_CASE("pivot followed by the reverse pivot restores the tableau") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        auto gen = oracle::random_lp(rng, 0);
        auto t = build_tableau(gen.lp, phase_one(gen.lp));
        auto before = t.body();
        // pick any nonbasic column with a usable entry
        bool done = false;
        for (std::size_t j = 0; j < t.num_columns() && !done; ++j) {
            if (t.is_basic(j)) continue;
            for (std::size_t r = 0; r < t.num_constraints() && !done; ++r) {
                if (std::abs(t.entry(r, j)) < 0.5) continue;
                const std::size_t leaving = t.basis().indices[r];
                t.pivot(j, r);
                check_tableau_invariants(t, gen.lp, gen.lp.c());
                t.pivot(leaving, r);
                done = true;
            }
        }
        const auto& after = t.body();
        for (std::size_t r = 0; r < after.rows(); ++r)
            for (std::size_t c = 0; c < after.cols(); ++c)
                CHECK(std::abs(after(r, c) - before(r, c)) <= 1e-9);
    }
}

TEST_CASE("solve forced optimum on a segment") {
    auto lp = segment_lp({1.0, 0.0});
    auto res = solve(lp);
    REQUIRE(res.status == SolveStatus::kOptimal);
    CHECK(res.vertex[0] == doctest::Approx(0.0));
    CHECK(res.vertex[1] == doctest::Approx(1.0));
    CHECK(res.objective_value == doctest::Approx(0.0));
}

TEST_CASE("max x1 + x2 on the unit square visits at most 3 of its 4 vertices") {
    std::vector<RowSpec> rows{{{1.0, 0.0}, Relation::kLessEqual, 1.0, "u1"},
                              {{0.0, 1.0}, Relation::kLessEqual, 1.0, "u2"}};
    std::vector<double> c{-1.0, -1.0};
    auto lp = build_standard_form(rows, c);
    SolveOptions opt;
    opt.record_vertices = true;
    auto res = solve(lp, opt);
    REQUIRE(res.status == SolveStatus::kOptimal);
    CHECK(res.objective_value == doctest::Approx(-2.0));
    CHECK(res.visited_vertices.size() <= 3);
    CHECK(res.phase2_pivots == 2);
}

TEST_CASE("unbounded LP is reported") {
    std::vector<RowSpec> rows{{{1.0, -1.0}, Relation::kLessEqual, 1.0, ""}};
    std::vector<double> c{-1.0, -1.0};
    auto lp = build_standard_form(rows, c);
    CHECK(solve(lp).status == SolveStatus::kUnbounded);
}

TEST_CASE("solve agrees with basis enumeration on 500 random LPs") {
    std::mt19937_64 rng(2024);
    int counts[3] = {0, 0, 0};
    for (int trial = 0; trial < 500; ++trial) {
        auto gen = oracle::random_lp(rng, trial % 3 == 0 ? 1 : 0);
        auto expected = oracle::solve(gen.lp);
        auto got = solve(gen.lp);
        counts[static_cast<int>(expected.status)]++;
        REQUIRE(static_cast<int>(got.status) == static_cast<int>(expected.status));
        if (expected.status == oracle::Status::kOptimal) {
            CHECK(std::abs(got.objective_value - expected.objective) <= 1e-8);
            CHECK(gen.lp.max_residual(got.vertex) <= 1e-8);
            CHECK(gen.lp.max_bound_violation(got.vertex) <= 1e-9);
        }
    }
    // the generator should exercise every status
    CHECK(counts[0] > 0);
    CHECK(counts[1] > 0);
    CHECK(counts[2] > 0);
}

TEST_CASE("objective is non-increasing across phase-two pivots") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto gen = oracle::random_lp(rng, 0);
        auto t = build_tableau(gen.lp, phase_one(gen.lp));
        PivotSelector sel;
        double prev = t.objective_value(0);
        run_phase_two(t, 0, sel, 1000, [&](Tableau& tab) {
            CHECK(tab.objective_value(0) <= prev + 1e-9);
            prev = tab.objective_value(0);
            check_tableau_invariants(tab, gen.lp, gen.lp.c());
        });
    }
}

TEST_CASE("Bland fallback engages after the configured degenerate run") {
    PivotRules rules;
    rules.bland_after = 3;
    PivotSelector sel(rules);
    sel.record(1.0, 1.0);
    sel.record(1.0, 1.0);
    CHECK_FALSE(sel.bland_active());
    sel.record(1.0, 1.0);
    CHECK(sel.bland_active());
    sel.record(1.0, 0.5);
    CHECK_FALSE(sel.bland_active());
}

TEST_CASE("iteration cap is a hard failure") {
    std::vector<RowSpec> rows{{{1.0, 0.0}, Relation::kLessEqual, 1.0, ""},
                              {{0.0, 1.0}, Relation::kLessEqual, 1.0, ""}};
    std::vector<double> c{-1.0, -1.0};
    auto lp = build_standard_form(rows, c);
    SolveOptions opt;
    opt.max_pivots = 1;
    try {
        solve(lp, opt);
        FAIL("expected iteration limit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kIterationLimit);
    }
}

TEST_CASE("per-pivot work of the full tableau scales as n*m") {
    auto flops_per_pivot = [](std::size_t m, std::size_t n) {
        std::mt19937_64 rng(m * 1000 + n);
        std::uniform_real_distribution<double> u(0.1, 1.0);
        std::vector<RowSpec> rows;
        for (std::size_t r = 0; r < m; ++r) {
            RowSpec row;
            row.coeffs.resize(n);
            for (auto& v : row.coeffs) v = u(rng);
            row.relation = Relation::kLessEqual;
            row.rhs = 1.0;
            rows.push_back(row);
        }
        std::vector<double> c(n);
        for (auto& v : c) v = -u(rng);
        auto lp = build_standard_form(rows, c);
        SolveOptions opt;
        opt.skip_zero_rows = false;
        opt.refactor_interval = 0;
        auto res = solve(lp, opt);
        REQUIRE(res.phase2_pivots > 0);
        return std::pair{static_cast<double>(res.pivot_flops) / res.phase2_pivots,
                         static_cast<double>(lp.cols() * lp.rows())};
    };
    auto [small, nm_small] = flops_per_pivot(20, 20);
    auto [large, nm_large] = flops_per_pivot(40, 40);
    const double measured = large / small;
    const double predicted = nm_large / nm_small;
    CHECK(std::abs(measured / predicted - 1.0) <= 0.25);
}

TEST_CASE("LP text fixtures parse and round-trip") {
    const char* text = R"(# toy
names a b
min 1 2
1 1 >= 1 @demand
1 0 <= 3
interest b
)";
    auto parsed = parse_lp_text(text);
    auto lp = parsed.to_standard_form();
    CHECK(lp.rows() == 2);
    CHECK(lp.cols() == 4);
    REQUIRE(lp.interest_columns().size() == 1);
    CHECK(lp.interest_columns()[0] == 1);
    auto res = solve(lp);
    CHECK(res.objective_value == doctest::Approx(1.0));

    auto again = parse_lp_text(to_lp_text(lp)).to_standard_form();
    CHECK(again.a() == lp.a());
    CHECK(again.b() == lp.b());
    CHECK(again.c() == lp.c());
    CHECK(again.column_names() == lp.column_names());
    CHECK(again.interest_columns() == lp.interest_columns());

    CHECK_THROWS_AS(parse_lp_text("1 1 <= 2\n"), Error);
    CHECK_THROWS_AS(parse_lp_text("min 1 1\n1 1 ~ 2\n"), Error);
    CHECK_THROWS_AS(parse_lp_text("min 1 1\n1 x <= 2\n"), Error);
    CHECK_THROWS_AS(parse_lp_text("names a\nmin 1 1\n"), Error);
}

TEST_CASE("bundled fixture file solves") {
    auto lp = read_lp_file(std::string(NEAROPT_FIXTURE_DIR) + "/diet.lp").to_standard_form();
    auto res = solve(lp);
    REQUIRE(res.status == SolveStatus::kOptimal);
    auto expected = oracle::solve(lp);
    CHECK(res.objective_value == doctest::Approx(expected.objective).epsilon(1e-10));
}
