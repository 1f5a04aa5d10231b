#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "nearopt/lp/standard_form.hpp"
#include "nearopt/rng.hpp"

namespace nearopt::hub {

enum class Technology : std::size_t {
    kWind = 0,
    kPv,
    kBattery,
    kChp,
    kHeatPump,
    kGasBoiler,
    kThermalStorage,
};

inline constexpr std::size_t kNumTechnologies = 7;

std::string_view to_string(Technology tech) noexcept;
Technology technology_from_string(std::string_view name);

// Order in which technologies become interest variables as N_d grows.
inline constexpr std::array<Technology, kNumTechnologies> kInterestOrder{
    Technology::kWind,      Technology::kGasBoiler, Technology::kPv,
    Technology::kHeatPump,  Technology::kChp,       Technology::kBattery,
    Technology::kThermalStorage,
};

/// Cost and performance data. Units: power kW, energy kWh, PV area m^2,
/// money k EUR, emissions t CO2.
struct TechnologyData {
    double capex = 0.0;  // k EUR per unit of capacity
    // Conversion efficiency: CHP electrical, heat pump COP, boiler thermal,
    // storage charging. Unused for wind and PV.
    double efficiency = 1.0;
    double thermal_efficiency = 0.0;      // CHP only
    double discharge_efficiency = 1.0;    // storage only
    double c_rate = 0.0;                  // storage only, 1/h
    double fallback_scale = 1.0;  // characteristic scale when built capacity is zero
};

struct HubParameters {
    std::array<TechnologyData, kNumTechnologies> tech{};
    double pv_peak_yield = 0.2;        // kW per m^2 at capacity factor 1
    double grid_price = 0.00020;       // k EUR per kWh
    double gas_price = 0.000035;       // k EUR per kWh
    double grid_emissions = 0.00025;   // t CO2 per kWh
    double gas_emissions = 0.00020;    // t CO2 per kWh
    double solar_peak = 0.75;          // clear-sky peak capacity factor
    double wind_mean = 0.28;
    double wind_amplitude = 0.12;

    static HubParameters defaults();
    const TechnologyData& operator[](Technology t) const noexcept {
        return tech[static_cast<std::size_t>(t)];
    }
    TechnologyData& operator[](Technology t) noexcept { return tech[static_cast<std::size_t>(t)]; }
};

struct HubConfig {
    std::size_t hours_per_day = 24;
    std::size_t n_days = 1;
    std::array<bool, kNumTechnologies> enabled{true, true, true, true, true, true, true};
    double heat_demand = 1100.0;  // kW
    double elec_demand = 440.0;   // kW
    double co2_cap = 1460.0;      // t per year; +inf drops the row
    double lifetime_years = 25.0;
    double discount_rate = 0.05;
    HubParameters params = HubParameters::defaults();
    std::size_t n_pv_sites = 1;
    double pv_noise_sigma = 0.254;
    std::uint64_t seed = 1;

    void validate() const;
    std::size_t steps() const noexcept { return hours_per_day * n_days; }
    double step_hours() const noexcept { return 24.0 / static_cast<double>(hours_per_day); }
    double day_weight() const noexcept { return 365.0 / static_cast<double>(n_days); }
    // Capital recovery factor for the configured lifetime and rate.
    double annuity_factor() const noexcept;
};

struct Profiles {
    std::vector<std::vector<double>> solar;  // [site][step], capacity factor
    std::vector<double> wind;
    std::vector<double> heat_demand;
    std::vector<double> elec_demand;
};

Profiles generate_profiles(const HubConfig& config);

/// Per-site profiles: site s is base * f_s with f_s log-normal of mean 1 and
/// standard deviation `sigma`, clipped to [0, 1]. One factor is drawn for every
/// site; site 0 keeps the base profile so smaller site counts nest.
std::vector<std::vector<double>> expand_pv_sites(const std::vector<double>& base,
                                                 std::size_t n_sites, double sigma, Rng& rng);

/// Log-normal draws with the given mean and standard deviation.
std::vector<double> lognormal_factors(std::size_t count, double mean, double sd, Rng& rng);

struct CapacityColumn {
    Technology tech;
    std::size_t site = 0;  // PV site, 0 otherwise
    std::size_t column = 0;
};

struct HubModel {
    lp::StandardFormLP lp;
    std::vector<CapacityColumn> capacities;
    // Column of the aggregate capacity of each technology (PV total when
    // there are several sites); npos when the technology is disabled.
    std::array<std::size_t, kNumTechnologies> aggregate_column{};
    std::vector<Technology> interest_technologies;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Interest columns for the first `n_interest` entries of kInterestOrder.
    std::vector<std::size_t> interest_for(std::size_t n_interest) const;
    std::vector<double> fallback_scales(std::size_t n_interest) const;
    const HubConfig& config() const noexcept { return config_; }

    HubConfig config_;
};

/// Builds the capacity-expansion LP. Default interest set is the four
/// technologies wind, gas boiler, PV, heat pump.
HubModel build_hub_lp(const HubConfig& config, const Profiles& profiles);
inline HubModel build_hub_lp(const HubConfig& config) {
    return build_hub_lp(config, generate_profiles(config));
}

struct Preset {
    std::string name;
    HubConfig hub;
    std::size_t n_objectives = 200;
    double epsilon = 0.05;
    std::size_t n_interest = 4;
};

/// Base case plus sweep grids: horizon {6, 12, 24, 48} h, PV sites at a 6 h
/// horizon, N_k {25, 50, 100, 200, 400}, N_d {2..7}.
std::vector<Preset> hub_presets();
Preset find_preset(std::string_view name);

} // namespace nearopt::hub
