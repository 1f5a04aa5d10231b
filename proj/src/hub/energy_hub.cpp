#include "nearopt/hub/energy_hub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "nearopt/error.hpp"

namespace nearopt::hub {
namespace {

constexpr std::array<std::string_view, kNumTechnologies> kNames{
    "wind", "pv", "battery", "chp", "heat_pump", "gas_boiler", "thermal_storage"};

// Sparse row under construction.
struct Row {
    std::vector<std::pair<std::size_t, double>> terms;
    lp::Relation relation;
    double rhs;
    std::string name;
};

class Builder {
public:
    std::size_t column(std::string name, double cost) {
        names_.push_back(std::move(name));
        costs_.push_back(cost);
        return names_.size() - 1;
    }
    void row(std::vector<std::pair<std::size_t, double>> terms, lp::Relation rel, double rhs,
             std::string name) {
        rows_.push_back({std::move(terms), rel, rhs, std::move(name)});
    }
    lp::StandardFormLP finish() {
        std::vector<lp::RowSpec> specs;
        specs.reserve(rows_.size());
        for (auto& r : rows_) {
            lp::RowSpec spec;
            spec.coeffs.assign(names_.size(), 0.0);
            for (auto [j, v] : r.terms) spec.coeffs[j] += v;
            spec.relation = r.relation;
            spec.rhs = r.rhs;
            spec.name = std::move(r.name);
            specs.push_back(std::move(spec));
        }
        return lp::build_standard_form(specs, costs_, names_);
    }

private:
    std::vector<std::string> names_;
    std::vector<double> costs_;
    std::vector<Row> rows_;
};

std::string indexed(std::string_view base, std::size_t t) {
    return std::string(base) + "[" + std::to_string(t) + "]";
}

// Mean of peak * sin(pi (h - 6) / 12) over [a, b] clipped to daylight 6..18.
double solar_step_average(double a, double b, double peak) {
    const double lo = std::clamp(a, 6.0, 18.0);
    const double hi = std::clamp(b, 6.0, 18.0);
    if (hi <= lo) return 0.0;
    const double k = std::numbers::pi / 12.0;
    const double integral = (std::cos(k * (lo - 6.0)) - std::cos(k * (hi - 6.0))) / k;
    return peak * integral / (b - a);
}

} // namespace

std::string_view to_string(Technology tech) noexcept {
    return kNames[static_cast<std::size_t>(tech)];
}

Technology technology_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kNumTechnologies; ++i) {
        if (kNames[i] == name) return static_cast<Technology>(i);
    }
    fail(ErrorCode::kInvalidArgument, "unknown technology '" + std::string(name) + "'");
}

HubParameters HubParameters::defaults() {
    HubParameters p;
    p[Technology::kWind] = {.capex = 2.4, .fallback_scale = 400.0};
    p[Technology::kPv] = {.capex = 0.34, .fallback_scale = 4000.0};
    p[Technology::kBattery] = {.capex = 0.30,
                               .efficiency = 0.95,
                               .discharge_efficiency = 0.95,
                               .c_rate = 0.5,
                               .fallback_scale = 500.0};
    p[Technology::kChp] = {.capex = 1.1,
                           .efficiency = 0.35,
                           .thermal_efficiency = 0.50,
                           .fallback_scale = 400.0};
    p[Technology::kHeatPump] = {.capex = 0.85, .efficiency = 3.2, .fallback_scale = 400.0};
    p[Technology::kGasBoiler] = {.capex = 0.10, .efficiency = 0.92, .fallback_scale = 500.0};
    p[Technology::kThermalStorage] = {.capex = 0.025,
                                      .efficiency = 0.98,
                                      .discharge_efficiency = 0.98,
                                      .c_rate = 0.25,
                                      .fallback_scale = 2000.0};
    return p;
}

void HubConfig::validate() const {
    require(hours_per_day >= 1 && hours_per_day <= 24, "hours_per_day must be in [1, 24]");
    require(24 % hours_per_day == 0, "hours_per_day must divide 24");
    require(n_days >= 1, "n_days must be >= 1");
    require(heat_demand > 0.0 && elec_demand > 0.0, "demands must be positive");
    require(co2_cap > 0.0, "co2_cap must be positive");
    require(lifetime_years > 0.0, "lifetime must be positive");
    require(discount_rate >= 0.0, "discount rate must be nonnegative");
    require(n_pv_sites >= 1, "n_pv_sites must be >= 1");
    require(pv_noise_sigma >= 0.0, "pv_noise_sigma must be nonnegative");
    for (std::size_t i = 0; i < kNumTechnologies; ++i) {
        const auto& t = params.tech[i];
        require(t.capex > 0.0 && t.efficiency > 0.0 && t.fallback_scale > 0.0,
                "technology '" + std::string(kNames[i]) + "' needs positive parameters");
    }
    require(params.grid_price > 0.0 && params.gas_price > 0.0, "prices must be positive");
    require(params.grid_emissions > 0.0 && params.gas_emissions > 0.0,
            "emission factors must be positive");
}

double HubConfig::annuity_factor() const noexcept {
    if (discount_rate == 0.0) return 1.0 / lifetime_years;
    return discount_rate / (1.0 - std::pow(1.0 + discount_rate, -lifetime_years));
}

std::vector<double> lognormal_factors(std::size_t count, double mean, double sd, Rng& rng) {
    std::vector<double> out(count, mean);
    if (sd == 0.0) {
        // keep the stream position independent of sigma
        std::normal_distribution<double> z;
        for (std::size_t i = 0; i < count; ++i) (void)z(rng);
        return out;
    }
    const double s2 = std::log1p((sd * sd) / (mean * mean));
    const double mu = std::log(mean) - 0.5 * s2;
    std::lognormal_distribution<double> dist(mu, std::sqrt(s2));
    for (auto& v : out) v = dist(rng);
    return out;
}

std::vector<std::vector<double>> expand_pv_sites(const std::vector<double>& base,
                                                 std::size_t n_sites, double sigma, Rng& rng) {
    require(n_sites >= 1, "n_sites must be >= 1");
    auto factors = lognormal_factors(n_sites, 1.0, sigma, rng);
    factors[0] = 1.0;
    std::vector<std::vector<double>> out(n_sites, base);
    for (std::size_t s = 0; s < n_sites; ++s) {
        for (auto& v : out[s]) v = std::clamp(v * factors[s], 0.0, 1.0);
    }
    return out;
}

Profiles generate_profiles(const HubConfig& config) {
    config.validate();
    const std::size_t h = config.hours_per_day;
    const std::size_t days = config.n_days;
    const double dt = config.step_hours();
    const auto& p = config.params;
    Rng rng = make_stream(config.seed, "hub/profiles");
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    Profiles out;
    std::vector<double> solar;
    for (std::size_t d = 0; d < days; ++d) {
        // Seasonal swing only when several representative days exist.
        const double season =
            days > 1 ? std::cos(2.0 * std::numbers::pi * (static_cast<double>(d) + 0.5) /
                                static_cast<double>(days))
                     : 0.0;
        const double peak = p.solar_peak * (1.0 - 0.3 * season);
        const double wind_level = p.wind_mean * (1.0 + 0.25 * season);
        const double ph1 = phase(rng);
        const double ph2 = phase(rng);
        for (std::size_t k = 0; k < h; ++k) {
            const double a = static_cast<double>(k) * dt;
            const double mid = a + 0.5 * dt;
            solar.push_back(std::clamp(solar_step_average(a, a + dt, peak), 0.0, 1.0));
            const double wave = 0.7 * std::sin(2.0 * std::numbers::pi * mid / 24.0 + ph1) +
                                0.3 * std::sin(4.0 * std::numbers::pi * mid / 24.0 + ph2);
            out.wind.push_back(std::clamp(wind_level + p.wind_amplitude * wave, 0.0, 1.0));
        }
    }
    Rng site_rng = make_stream(config.seed, "hub/pv_sites");
    out.solar = expand_pv_sites(solar, config.n_pv_sites, config.pv_noise_sigma, site_rng);
    out.heat_demand.assign(config.steps(), config.heat_demand);
    out.elec_demand.assign(config.steps(), config.elec_demand);
    return out;
}

HubModel build_hub_lp(const HubConfig& config, const Profiles& profiles) {
    config.validate();
    const std::size_t steps = config.steps();
    const std::size_t h = config.hours_per_day;
    const std::size_t sites = config.n_pv_sites;
    require(profiles.wind.size() == steps && profiles.heat_demand.size() == steps &&
                profiles.elec_demand.size() == steps,
            "profile length != hours_per_day * n_days");
    require(profiles.solar.size() == sites, "solar profile count != n_pv_sites");
    for (const auto& s : profiles.solar) require(s.size() == steps, "solar profile length mismatch");

    const auto& p = config.params;
    const double dt = config.step_hours();
    const double weight = config.day_weight() * dt;  // hours per year one step stands for
    const double crf = config.annuity_factor();
    auto on = [&](Technology t) { return config.enabled[static_cast<std::size_t>(t)]; };

    HubModel model;
    model.config_ = config;
    model.aggregate_column.fill(HubModel::npos);
    Builder b;

    // Capacities.
    std::array<std::size_t, kNumTechnologies> cap{};
    cap.fill(HubModel::npos);
    std::vector<std::size_t> pv_site_cap;
    for (std::size_t i = 0; i < kNumTechnologies; ++i) {
        const auto tech = static_cast<Technology>(i);
        if (!on(tech)) continue;
        const double annual = crf * p.tech[i].capex;
        if (tech == Technology::kPv) {
            for (std::size_t s = 0; s < sites; ++s) {
                const std::string name =
                    sites == 1 ? "cap_pv" : "cap_pv_site" + std::to_string(s + 1);
                pv_site_cap.push_back(b.column(name, annual));
                model.capacities.push_back({tech, s, pv_site_cap.back()});
            }
            if (sites == 1) {
                cap[i] = pv_site_cap[0];
            } else {
                cap[i] = b.column("cap_pv", 0.0);
                std::vector<std::pair<std::size_t, double>> terms{{cap[i], 1.0}};
                for (std::size_t c : pv_site_cap) terms.emplace_back(c, -1.0);
                b.row(std::move(terms), lp::Relation::kEqual, 0.0, "pv_total");
            }
        } else {
            cap[i] = b.column("cap_" + std::string(kNames[i]), annual);
            model.capacities.push_back({tech, 0, cap[i]});
        }
        model.aggregate_column[i] = cap[i];
    }
    auto capcol = [&](Technology t) { return cap[static_cast<std::size_t>(t)]; };

    const auto& chp = p[Technology::kChp];
    const auto& hp = p[Technology::kHeatPump];
    const auto& gb = p[Technology::kGasBoiler];
    const auto& bat = p[Technology::kBattery];
    const auto& ts = p[Technology::kThermalStorage];
    const double gas_cost = weight * p.gas_price;
    const double grid_cost = weight * p.grid_price;

    std::vector<std::pair<std::size_t, double>> co2;
    struct Storage {
        std::vector<std::size_t> charge, discharge, soc;
    } battery, thermal;

    for (std::size_t t = 0; t < steps; ++t) {
        std::vector<std::pair<std::size_t, double>> elec, heat;

        if (on(Technology::kWind)) {
            const std::size_t g = b.column(indexed("wind_gen", t), 0.0);
            elec.emplace_back(g, 1.0);
            b.row({{g, 1.0}, {capcol(Technology::kWind), -profiles.wind[t]}},
                  lp::Relation::kLessEqual, 0.0, indexed("wind_avail", t));
        }
        if (on(Technology::kPv)) {
            const std::size_t g = b.column(indexed("pv_gen", t), 0.0);
            elec.emplace_back(g, 1.0);
            std::vector<std::pair<std::size_t, double>> avail{{g, 1.0}};
            for (std::size_t s = 0; s < sites; ++s)
                avail.emplace_back(pv_site_cap[s], -p.pv_peak_yield * profiles.solar[s][t]);
            b.row(std::move(avail), lp::Relation::kLessEqual, 0.0, indexed("pv_avail", t));
        }
        if (on(Technology::kChp)) {
            const std::size_t g = b.column(indexed("chp_el", t), gas_cost / chp.efficiency);
            elec.emplace_back(g, 1.0);
            heat.emplace_back(g, chp.thermal_efficiency / chp.efficiency);
            co2.emplace_back(g, weight * p.gas_emissions / chp.efficiency);
            b.row({{g, 1.0}, {capcol(Technology::kChp), -1.0}}, lp::Relation::kLessEqual, 0.0,
                  indexed("chp_cap", t));
        }
        if (on(Technology::kHeatPump)) {
            const std::size_t g = b.column(indexed("hp_heat", t), 0.0);
            heat.emplace_back(g, 1.0);
            elec.emplace_back(g, -1.0 / hp.efficiency);
            b.row({{g, 1.0}, {capcol(Technology::kHeatPump), -1.0}}, lp::Relation::kLessEqual,
                  0.0, indexed("hp_cap", t));
        }
        if (on(Technology::kGasBoiler)) {
            const std::size_t g = b.column(indexed("gb_heat", t), gas_cost / gb.efficiency);
            heat.emplace_back(g, 1.0);
            co2.emplace_back(g, weight * p.gas_emissions / gb.efficiency);
            b.row({{g, 1.0}, {capcol(Technology::kGasBoiler), -1.0}}, lp::Relation::kLessEqual,
                  0.0, indexed("gb_cap", t));
        }
        auto add_storage = [&](Technology tech, std::string_view tag, const TechnologyData& d,
                               Storage& st, std::vector<std::pair<std::size_t, double>>& balance) {
            const std::string base(tag);
            const std::size_t ch = b.column(indexed(base + "_charge", t), 0.0);
            const std::size_t dis = b.column(indexed(base + "_discharge", t), 0.0);
            const std::size_t soc = b.column(indexed(base + "_soc", t), 0.0);
            st.charge.push_back(ch);
            st.discharge.push_back(dis);
            st.soc.push_back(soc);
            balance.emplace_back(dis, 1.0);
            balance.emplace_back(ch, -1.0);
            b.row({{ch, 1.0}, {capcol(tech), -d.c_rate}}, lp::Relation::kLessEqual, 0.0,
                  indexed(base + "_charge_cap", t));
            b.row({{dis, 1.0}, {capcol(tech), -d.c_rate}}, lp::Relation::kLessEqual, 0.0,
                  indexed(base + "_discharge_cap", t));
            b.row({{soc, 1.0}, {capcol(tech), -1.0}}, lp::Relation::kLessEqual, 0.0,
                  indexed(base + "_soc_cap", t));
        };
        if (on(Technology::kBattery)) add_storage(Technology::kBattery, "bat", bat, battery, elec);
        if (on(Technology::kThermalStorage))
            add_storage(Technology::kThermalStorage, "ts", ts, thermal, heat);

        const std::size_t grid = b.column(indexed("grid_import", t), grid_cost);
        elec.emplace_back(grid, 1.0);
        co2.emplace_back(grid, weight * p.grid_emissions);

        b.row(std::move(elec), lp::Relation::kEqual, profiles.elec_demand[t],
              indexed("elec_balance", t));
        b.row(std::move(heat), lp::Relation::kGreaterEqual, profiles.heat_demand[t],
              indexed("heat_balance", t));
    }

    // State of charge at the start of step t+1 (cyclic within each day).
    auto dynamics = [&](const Storage& st, const TechnologyData& d, std::string_view tag) {
        if (st.soc.empty()) return;
        for (std::size_t t = 0; t < steps; ++t) {
            const std::size_t day = t / h;
            const std::size_t next = day * h + (t % h + 1) % h;
            b.row({{st.soc[next], 1.0},
                   {st.soc[t], -1.0},
                   {st.charge[t], -dt * d.efficiency},
                   {st.discharge[t], dt / d.discharge_efficiency}},
                  lp::Relation::kEqual, 0.0, indexed(std::string(tag) + "_dynamics", t));
        }
    };
    dynamics(battery, bat, "bat");
    dynamics(thermal, ts, "ts");

    if (std::isfinite(config.co2_cap)) {
        b.row(std::move(co2), lp::Relation::kLessEqual, config.co2_cap, "co2_cap");
    }

    model.lp = b.finish();
    // Default interest set: the first four of kInterestOrder that are built.
    std::vector<std::size_t> interest;
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t c = model.aggregate_column[static_cast<std::size_t>(kInterestOrder[i])];
        if (c == HubModel::npos) continue;
        model.interest_technologies.push_back(kInterestOrder[i]);
        interest.push_back(c);
    }
    model.lp.set_interest_columns(interest);
    return model;
}

std::vector<std::size_t> HubModel::interest_for(std::size_t n_interest) const {
    require(n_interest >= 1 && n_interest <= kNumTechnologies, "N_d must be in [1, 7]");
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n_interest; ++i) {
        const std::size_t c = aggregate_column[static_cast<std::size_t>(kInterestOrder[i])];
        require(c != npos, "interest technology '" + std::string(to_string(kInterestOrder[i])) +
                               "' is disabled");
        cols.push_back(c);
    }
    return cols;
}

std::vector<double> HubModel::fallback_scales(std::size_t n_interest) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < n_interest; ++i)
        out.push_back(config_.params[kInterestOrder[i]].fallback_scale);
    return out;
}

std::vector<Preset> hub_presets() {
    std::vector<Preset> out;
    Preset base{"base", HubConfig{}, 200, 0.05, 4};
    out.push_back(base);
    for (std::size_t hours : {6, 12, 24, 48}) {
        Preset p = base;
        p.name = "horizon_" + std::to_string(hours);
        p.hub.hours_per_day = std::min<std::size_t>(hours, 24);
        p.hub.n_days = hours > 24 ? hours / 24 : 1;
        out.push_back(p);
    }
    for (std::size_t sites : {1, 2, 4, 8, 16}) {
        Preset p = base;
        p.name = "pv_sites_" + std::to_string(sites);
        p.hub.hours_per_day = 6;
        p.hub.n_pv_sites = sites;
        out.push_back(p);
    }
    for (std::size_t nk : {25, 50, 100, 200, 400}) {
        Preset p = base;
        p.name = "nk_" + std::to_string(nk);
        p.n_objectives = nk;
        out.push_back(p);
    }
    for (std::size_t nd = 2; nd <= kNumTechnologies; ++nd) {
        Preset p = base;
        p.name = "nd_" + std::to_string(nd);
        p.n_interest = nd;
        out.push_back(p);
    }
    return out;
}

Preset find_preset(std::string_view name) {
    for (auto& p : hub_presets()) {
        if (p.name == name) return p;
    }
    fail(ErrorCode::kInvalidArgument, "unknown preset '" + std::string(name) + "'");
}

} // namespace nearopt::hub
