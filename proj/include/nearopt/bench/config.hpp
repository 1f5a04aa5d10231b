#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nearopt/baselines/random_directions.hpp"
#include "nearopt/hub/energy_hub.hpp"
#include "nearopt/metrics/hull.hpp"

namespace nearopt::bench {

enum class Method { kFunplex, kSpores, kRandomDirections };

const char* to_string(Method method) noexcept;
Method method_from(std::string_view name);

enum class SweepAxis { kNone, kHorizon, kPvSites, kObjectives, kInterest };

const char* to_string(SweepAxis axis) noexcept;
SweepAxis sweep_axis_from(std::string_view name);

struct FunplexFlags {
    bool record_intermediaries = true;
    bool check_all_objectives = true;
    bool warm_start = true;
    bool scale_variables = true;
};

struct SporesSettings {
    double r0 = 0.5;
    double gamma = 100.0;
    std::vector<std::pair<double, double>> ab_pairs{{-100, 1}, {-10, 1}, {-1, 1},
                                                    {1, 1},    {10, 1},  {100, 1}};
    // 0 spreads exactly n_objectives solves over the sequences.
    std::size_t n_max = 0;
};

struct ExperimentConfig {
    std::string name = "experiment";
    // Model: an LP fixture when lp_file is set, else the hub preset with
    // `hub` (resolved from the preset unless given) as its configuration.
    std::string preset = "base";
    hub::HubConfig hub;
    std::string lp_file;
    double fallback_scale = 1.0;  // LP fixtures only

    std::vector<Method> methods{Method::kFunplex, Method::kSpores, Method::kRandomDirections};
    double epsilon = 0.05;
    std::size_t n_objectives = 200;
    std::size_t n_interest = 4;  // 0: every interest column of an LP fixture
    std::uint64_t seed = 1;

    FunplexFlags funplex;
    SporesSettings spores;
    baselines::BetaInterval interval = baselines::BetaInterval::kSymmetric;

    metrics::VolumeMethod volume_method = metrics::VolumeMethod::kAuto;
    std::size_t volume_samples = 1'000'000;
    bool outlines = false;
    std::size_t outline_directions = 720;
    bool keep_full_vertices = false;
    std::size_t solve_threads = 1;

    SweepAxis sweep_axis = SweepAxis::kNone;
    std::vector<double> sweep_grid;
    std::size_t sweep_threads = 1;

    std::filesystem::path output_dir = "results";

    bool has_method(Method m) const;
    void validate() const;
};

/// Unset keys take the preset's values (preset "base" unless named).
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Full snapshot; config_from_json(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& config);

/// Copy of `config` at one sweep grid point.
ExperimentConfig at_grid_point(const ExperimentConfig& config, SweepAxis axis, double value);

} // namespace nearopt::bench
