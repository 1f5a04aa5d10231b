#include "doctest.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "lp_oracle.hpp"
#include "nearopt/hub/energy_hub.hpp"
#include "nearopt/hub/hub_json.hpp"
#include "nearopt/lp/lp_text.hpp"
#include "nearopt/lp/simplex.hpp"

using namespace nearopt;
using namespace nearopt::hub;

namespace {

std::size_t row_index(const lp::StandardFormLP& lp, const std::string& name) {
    const auto& names = lp.row_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    FAIL("no row " << name);
    return 0;
}

double row_activity(const lp::StandardFormLP& lp, std::size_t row, const std::vector<double>& x,
                    std::string_view skip_prefix) {
    double s = 0.0;
    for (std::size_t j = 0; j < lp.cols(); ++j) {
        if (lp.column_names()[j].starts_with(skip_prefix)) continue;
        s += lp.a()(row, j) * x[j];
    }
    return s;
}

double value(const HubModel& m, const std::vector<double>& x, const std::string& name) {
    return x[m.lp.column_index(name)];
}

struct Solved {
    HubModel model;
    lp::SolveResult result;
};

Solved solve_hub(const HubConfig& cfg) {
    Solved s{build_hub_lp(cfg), {}};
    s.result = lp::solve(s.model.lp, {});
    return s;
}

} // namespace

TEST_CASE("default hub LP is feasible with a positive, certified optimum") {
    auto [model, r] = solve_hub(HubConfig{});
    REQUIRE(r.status == lp::SolveStatus::kOptimal);
    CHECK(r.objective_value > 0.0);
    CHECK(model.lp.rows() == 361);
    CHECK(model.lp.cols() == 584);
    CHECK(model.lp.max_residual(r.vertex) < 1e-7);

    auto cert = oracle::certify(model.lp, r.basis.indices);
    CHECK(cert.min_reduced_cost > -1e-7);
    CHECK(cert.min_primal > -1e-7);
    CHECK(cert.dual_objective == doctest::Approx(r.objective_value).epsilon(1e-9));
}

TEST_CASE("CO2 cap binds at the default optimum") {
    auto [model, r] = solve_hub(HubConfig{});
    REQUIRE(r.status == lp::SolveStatus::kOptimal);
    const auto row = row_index(model.lp, "co2_cap");
    CHECK(row_activity(model.lp, row, r.vertex, "slack_co2") ==
          doctest::Approx(1460.0).epsilon(1e-9));
    auto cert = oracle::certify(model.lp, r.basis.indices);
    CHECK(cert.duals[row] < -1e-6);  // <= row in a minimization

    HubConfig loose;
    loose.co2_cap = 1600.0;
    auto relaxed = solve_hub(loose);
    CHECK(relaxed.result.objective_value < r.objective_value - 1e-6);
}

TEST_CASE("renewables are part of the default optimum and PV area dominates heat pump kW") {
    auto [model, r] = solve_hub(HubConfig{});
    const double pv = value(model, r.vertex, "cap_pv");
    const double hp = value(model, r.vertex, "cap_heat_pump");
    CHECK(pv > 0.0);
    CHECK(value(model, r.vertex, "cap_wind") > 0.0);
    CHECK(hp > 0.0);
    CHECK(pv > hp);
}

TEST_CASE("no cap and cheap gas build no wind or PV") {
    HubConfig cfg;
    cfg.co2_cap = std::numeric_limits<double>::infinity();
    cfg.params.gas_price *= 0.5;
    auto [model, r] = solve_hub(cfg);
    REQUIRE(r.status == lp::SolveStatus::kOptimal);
    CHECK(value(model, r.vertex, "cap_wind") == 0.0);
    CHECK(value(model, r.vertex, "cap_pv") == 0.0);
    auto cert = oracle::certify(model.lp, r.basis.indices);
    CHECK(cert.min_reduced_cost > -1e-7);
    // Strictly positive reduced costs certify that no optimum builds them.
    for (const char* name : {"cap_wind", "cap_pv"}) {
        const auto j = model.lp.column_index(name);
        double d = model.lp.c()[j];
        for (std::size_t i = 0; i < model.lp.rows(); ++i) d -= model.lp.a()(i, j) * cert.duals[i];
        CHECK(d > 1e-6);
    }
}

TEST_CASE("energy balances, storage bounds and cyclic storage hold at the optimum") {
    auto [model, r] = solve_hub(HubConfig{});
    const auto& cfg = model.config();
    const auto& p = cfg.params;
    const auto& x = r.vertex;
    const std::size_t steps = cfg.steps();
    auto at = [&](const std::string& base, std::size_t t) {
        return value(model, x, base + "[" + std::to_string(t) + "]");
    };
    const double cop = p[Technology::kHeatPump].efficiency;
    const auto& chp = p[Technology::kChp];
    for (std::size_t t = 0; t < steps; ++t) {
        const double supply = at("wind_gen", t) + at("pv_gen", t) + at("chp_el", t) +
                              at("bat_discharge", t) - at("bat_charge", t) +
                              at("grid_import", t) - at("hp_heat", t) / cop;
        CHECK(supply == doctest::Approx(cfg.elec_demand).epsilon(1e-9));
        const double heat = at("hp_heat", t) + at("gb_heat", t) +
                            at("chp_el", t) * chp.thermal_efficiency / chp.efficiency +
                            at("ts_discharge", t) - at("ts_charge", t);
        CHECK(heat >= cfg.heat_demand - 1e-7);
        CHECK(at("bat_soc", t) <= value(model, x, "cap_battery") + 1e-7);
        CHECK(at("ts_soc", t) <= value(model, x, "cap_thermal_storage") + 1e-7);
        CHECK(at("ts_soc", t) >= -1e-9);
    }
    // Cyclic: level after the last step equals the level at the first.
    const auto& ts = p[Technology::kThermalStorage];
    const std::size_t last = steps - 1;
    const double after = at("ts_soc", last) + ts.efficiency * at("ts_charge", last) -
                         at("ts_discharge", last) / ts.discharge_efficiency;
    CHECK(after == doctest::Approx(at("ts_soc", 0)).epsilon(1e-7).scale(1.0));
}

TEST_CASE("profiles: constant demands, dark nights, determinism, length") {
    HubConfig cfg;
    auto a = generate_profiles(cfg);
    auto b = generate_profiles(cfg);
    CHECK(a.wind == b.wind);
    CHECK(a.solar == b.solar);
    REQUIRE(a.heat_demand.size() == 24);
    for (std::size_t t = 0; t < 24; ++t) {
        CHECK(a.heat_demand[t] == 1100.0);
        CHECK(a.elec_demand[t] == 440.0);
        CHECK(a.wind[t] >= 0.0);
        CHECK(a.wind[t] <= 1.0);
        if (t < 6 || t >= 18) CHECK(a.solar[0][t] == 0.0);
        else CHECK(a.solar[0][t] > 0.0);
    }
    cfg.hours_per_day = 6;
    auto six = generate_profiles(cfg);
    CHECK(six.wind.size() == 6);
    CHECK(six.solar[0].size() == 6);

    cfg.seed = 2;
    cfg.hours_per_day = 24;
    CHECK(generate_profiles(cfg).wind != a.wind);
}

TEST_CASE("log-normal PV factors reproduce mean 1 and sd 0.254") {
    Rng rng = make_stream(7, "test/lognormal");
    auto f = lognormal_factors(100000, 1.0, 0.254, rng);
    const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
    double ss = 0.0;
    for (double v : f) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(f.size() - 1));
    CHECK(std::abs(mean - 1.0) < 0.01);
    CHECK(std::abs(sd - 0.254) < 0.05 * 0.254);
}

TEST_CASE("expand_pv_sites: site 1 unnoised, sigma 0 identical, clipped") {
    std::vector<double> base{0.0, 0.5, 0.9, 1.0};
    Rng rng = make_stream(1, "test/sites");
    auto sites = expand_pv_sites(base, 5, 0.254, rng);
    REQUIRE(sites.size() == 5);
    CHECK(sites[0] == base);
    for (const auto& s : sites)
        for (double v : s) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    Rng rng2 = make_stream(1, "test/sites");
    for (const auto& s : expand_pv_sites(base, 4, 0.0, rng2)) CHECK(s == base);
}

TEST_CASE("more PV sites change only capacity columns and stay feasible") {
    HubConfig cfg;
    cfg.hours_per_day = 6;
    auto one = build_hub_lp(cfg);
    for (std::size_t sites : {2u, 4u, 8u}) {
        cfg.n_pv_sites = sites;
        auto many = build_hub_lp(cfg);
        // per-site capacities plus the aggregate column and its defining row
        CHECK(many.lp.cols() == one.lp.cols() + sites);
        CHECK(many.lp.rows() == one.lp.rows() + 1);
        CHECK(lp::solve(many.lp, {}).status == lp::SolveStatus::kOptimal);
    }
}

TEST_CASE("two representative days weight emissions by 365 / 2") {
    HubConfig cfg;
    cfg.n_days = 2;
    auto model = build_hub_lp(cfg);
    const auto row = row_index(model.lp, "co2_cap");
    double days = 0.0;
    for (std::size_t t = 0; t < cfg.steps(); ++t) {
        const auto j = model.lp.column_index("grid_import[" + std::to_string(t) + "]");
        days += model.lp.a()(row, j) / (cfg.params.grid_emissions * cfg.step_hours());
    }
    CHECK(days / 24.0 == doctest::Approx(365.0).epsilon(1e-12));
    CHECK(lp::solve(model.lp, {}).status == lp::SolveStatus::kOptimal);
}

TEST_CASE("interest columns follow wind, gas boiler, PV, heat pump") {
    auto model = build_hub_lp(HubConfig{});
    auto cols = model.interest_for(4);
    const auto& names = model.lp.column_names();
    CHECK(names[cols[0]] == "cap_wind");
    CHECK(names[cols[1]] == "cap_gas_boiler");
    CHECK(names[cols[2]] == "cap_pv");
    CHECK(names[cols[3]] == "cap_heat_pump");
    CHECK(model.lp.interest_columns() == cols);
    CHECK(model.interest_for(7).size() == 7);
    CHECK_THROWS_AS(model.interest_for(8), Error);

    HubConfig no_wind;
    no_wind.enabled[static_cast<std::size_t>(Technology::kWind)] = false;
    CHECK_THROWS_AS(build_hub_lp(no_wind).interest_for(1), Error);
}

TEST_CASE("presets cover the sweep grids") {
    auto base = find_preset("base");
    CHECK(base.epsilon == 0.05);
    CHECK(base.n_objectives == 200);
    CHECK(base.n_interest == 4);
    CHECK(base.hub.hours_per_day == 24);
    auto h48 = find_preset("horizon_48");
    CHECK(h48.hub.steps() == 48);
    CHECK(find_preset("nd_7").n_interest == 7);
    CHECK(find_preset("pv_sites_4").hub.hours_per_day == 6);
    CHECK(find_preset("nk_400").n_objectives == 400);
    CHECK_THROWS_AS(find_preset("nope"), Error);
}

TEST_CASE("bundled parameter file matches the built-in defaults") {
    auto file = load_parameters(NEAROPT_DATA_DIR "/hub_parameters.json");
    CHECK(to_json(file) == to_json(HubParameters::defaults()));
}

TEST_CASE("hub config JSON round trip, including an unbounded cap") {
    HubConfig cfg;
    cfg.co2_cap = std::numeric_limits<double>::infinity();
    cfg.n_pv_sites = 3;
    cfg.enabled[static_cast<std::size_t>(Technology::kBattery)] = false;
    auto back = config_from_json(to_json(cfg));
    CHECK(std::isinf(back.co2_cap));
    CHECK(back.n_pv_sites == 3);
    CHECK(back.enabled == cfg.enabled);
    CHECK(to_json(back) == to_json(cfg));
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"hours_per_day", 7}}), Error);
}

TEST_CASE("invalid configurations are rejected") {
    HubConfig cfg;
    cfg.heat_demand = -1.0;
    CHECK_THROWS_AS(build_hub_lp(cfg), Error);
    cfg = {};
    cfg.hours_per_day = 0;
    CHECK_THROWS_AS(generate_profiles(cfg), Error);
    // An unreachable cap makes the LP infeasible.
    cfg = {};
    cfg.hours_per_day = 6;
    cfg.enabled = {false, false, false, true, false, true, false};
    cfg.co2_cap = 10.0;
    CHECK(lp::solve(build_hub_lp(cfg).lp, {}).status == lp::SolveStatus::kInfeasible);
}

TEST_CASE("hub LP exports to the text format and reads back identically") {
    HubConfig cfg;
    cfg.hours_per_day = 6;
    auto model = build_hub_lp(cfg);
    auto back = lp::parse_lp_text(lp::to_lp_text(model.lp)).to_standard_form();
    CHECK(back.a() == model.lp.a());
    CHECK(back.b() == model.lp.b());
    CHECK(back.c() == model.lp.c());
    CHECK(back.interest_columns() == model.lp.interest_columns());
}
