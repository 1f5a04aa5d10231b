#include "nearopt/hub/hub_json.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "nearopt/error.hpp"

namespace nearopt::hub {
namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

// JSON has no infinity; a null or "inf" cap means no cap.
double read_cap(const json& v) {
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (v.is_string()) {
        require(v.get<std::string>() == "inf", "co2_cap must be a number, null or \"inf\"");
        return std::numeric_limits<double>::infinity();
    }
    return v.get<double>();
}

} // namespace

json to_json(const HubParameters& p) {
    json tech = json::object();
    for (std::size_t i = 0; i < kNumTechnologies; ++i) {
        const auto& t = p.tech[i];
        tech[std::string(to_string(static_cast<Technology>(i)))] = {
            {"capex", t.capex},
            {"efficiency", t.efficiency},
            {"thermal_efficiency", t.thermal_efficiency},
            {"discharge_efficiency", t.discharge_efficiency},
            {"c_rate", t.c_rate},
            {"fallback_scale", t.fallback_scale},
        };
    }
    return {
        {"technologies", tech},
        {"pv_peak_yield", p.pv_peak_yield},
        {"grid_price", p.grid_price},
        {"gas_price", p.gas_price},
        {"grid_emissions", p.grid_emissions},
        {"gas_emissions", p.gas_emissions},
        {"solar_peak", p.solar_peak},
        {"wind_mean", p.wind_mean},
        {"wind_amplitude", p.wind_amplitude},
    };
}

HubParameters parameters_from_json(const json& j, const HubParameters& base) {
    HubParameters p = base;
    try {
        if (auto it = j.find("technologies"); it != j.end()) {
            for (const auto& [name, v] : it->items()) {
                auto& t = p[technology_from_string(name)];
                read(v, "capex", t.capex);
                read(v, "efficiency", t.efficiency);
                read(v, "thermal_efficiency", t.thermal_efficiency);
                read(v, "discharge_efficiency", t.discharge_efficiency);
                read(v, "c_rate", t.c_rate);
                read(v, "fallback_scale", t.fallback_scale);
            }
        }
        read(j, "pv_peak_yield", p.pv_peak_yield);
        read(j, "grid_price", p.grid_price);
        read(j, "gas_price", p.gas_price);
        read(j, "grid_emissions", p.grid_emissions);
        read(j, "gas_emissions", p.gas_emissions);
        read(j, "solar_peak", p.solar_peak);
        read(j, "wind_mean", p.wind_mean);
        read(j, "wind_amplitude", p.wind_amplitude);
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("hub parameters: ") + e.what());
    }
    return p;
}

HubParameters load_parameters(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, path.string() + ": " + e.what());
    }
    return parameters_from_json(j);
}

json to_json(const HubConfig& c) {
    json enabled = json::array();
    for (std::size_t i = 0; i < kNumTechnologies; ++i) {
        if (c.enabled[i]) enabled.push_back(std::string(to_string(static_cast<Technology>(i))));
    }
    return {
        {"hours_per_day", c.hours_per_day},
        {"n_days", c.n_days},
        {"technologies", enabled},
        {"heat_demand", c.heat_demand},
        {"elec_demand", c.elec_demand},
        {"co2_cap", std::isfinite(c.co2_cap) ? json(c.co2_cap) : json("inf")},
        {"lifetime_years", c.lifetime_years},
        {"discount_rate", c.discount_rate},
        {"parameters", to_json(c.params)},
        {"n_pv_sites", c.n_pv_sites},
        {"pv_noise_sigma", c.pv_noise_sigma},
        {"seed", c.seed},
    };
}

HubConfig config_from_json(const json& j, const HubConfig& base) {
    HubConfig c = base;
    try {
        read(j, "hours_per_day", c.hours_per_day);
        read(j, "n_days", c.n_days);
        if (auto it = j.find("technologies"); it != j.end()) {
            c.enabled.fill(false);
            for (const auto& name : *it)
                c.enabled[static_cast<std::size_t>(technology_from_string(name.get<std::string>()))] =
                    true;
        }
        read(j, "heat_demand", c.heat_demand);
        read(j, "elec_demand", c.elec_demand);
        if (auto it = j.find("co2_cap"); it != j.end()) c.co2_cap = read_cap(*it);
        read(j, "lifetime_years", c.lifetime_years);
        read(j, "discount_rate", c.discount_rate);
        if (auto it = j.find("parameters"); it != j.end()) {
            c.params = parameters_from_json(*it, c.params);
        } else if (auto f = j.find("parameter_file"); f != j.end()) {
            c.params = load_parameters(f->get<std::string>());
        }
        read(j, "n_pv_sites", c.n_pv_sites);
        read(j, "pv_noise_sigma", c.pv_noise_sigma);
        read(j, "seed", c.seed);
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("hub config: ") + e.what());
    }
    c.validate();
    return c;
}

} // namespace nearopt::hub
