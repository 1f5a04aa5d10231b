#include "nearopt/bench/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nearopt/error.hpp"
#include "nearopt/hub/hub_json.hpp"

namespace nearopt::bench {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys{
    "name",    "preset",  "hub",          "lp_file", "fallback_scale",
    "methods", "epsilon", "n_objectives", "n_interest", "seed",
    "funplex", "spores",  "random_directions", "volume", "outlines",
    "keep_full_vertices", "solve_threads", "sweep", "output_dir"};

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::size_t to_count(double v, const char* what) {
    require(v >= 0.0 && std::floor(v) == v, std::string(what) + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

} // namespace

const char* to_string(Method method) noexcept {
    switch (method) {
        case Method::kFunplex: return "funplex";
        case Method::kSpores: return "spores";
        case Method::kRandomDirections: return "random_directions";
    }
    return "?";
}

Method method_from(std::string_view name) {
    for (auto m : {Method::kFunplex, Method::kSpores, Method::kRandomDirections})
        if (name == to_string(m)) return m;
    fail(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

const char* to_string(SweepAxis axis) noexcept {
    switch (axis) {
        case SweepAxis::kHorizon: return "horizon";
        case SweepAxis::kPvSites: return "pv_sites";
        case SweepAxis::kObjectives: return "n_objectives";
        case SweepAxis::kInterest: return "n_interest";
        case SweepAxis::kNone: break;
    }
    return "none";
}

SweepAxis sweep_axis_from(std::string_view name) {
    for (auto a : {SweepAxis::kNone, SweepAxis::kHorizon, SweepAxis::kPvSites,
                   SweepAxis::kObjectives, SweepAxis::kInterest})
        if (name == to_string(a)) return a;
    fail(ErrorCode::kInvalidArgument, "unknown sweep axis '" + std::string(name) + "'");
}

bool ExperimentConfig::has_method(Method m) const {
    for (auto x : methods)
        if (x == m) return true;
    return false;
}

void ExperimentConfig::validate() const {
    require(!methods.empty(), "at least one method is required");
    require(std::set<Method>(methods.begin(), methods.end()).size() == methods.size(),
            "methods listed twice");
    require(epsilon >= 0.0 && std::isfinite(epsilon), "epsilon must be >= 0");
    require(n_objectives >= 1, "n_objectives must be >= 1");
    require(!lp_file.empty() || n_interest >= 1, "n_interest must be >= 1 for hub models");
    require(fallback_scale > 0.0, "fallback_scale must be > 0");
    require(spores.r0 > 0.0 && spores.gamma >= 0.0 && !spores.ab_pairs.empty(),
            "invalid SPORES settings");
    require(volume_samples >= 1, "volume samples must be >= 1");
    require(outline_directions >= 8, "outline directions must be >= 8");
    require(solve_threads >= 1 && sweep_threads >= 1, "thread counts must be >= 1");
    require(sweep_axis == SweepAxis::kNone || !sweep_grid.empty(), "sweep grid is empty");
    if (lp_file.empty()) hub.validate();
}

ExperimentConfig config_from_json(const json& j) {
    require(j.is_object(), "experiment config must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kTopKeys.contains(key)) fail(ErrorCode::kParse, "unknown config key '" + key + "'");

    ExperimentConfig c;
    try {
        read(j, "name", c.name);
        read(j, "lp_file", c.lp_file);
        read(j, "preset", c.preset);
        if (c.lp_file.empty()) {
            const hub::Preset p = hub::find_preset(c.preset);
            c.hub = p.hub;
            c.epsilon = p.epsilon;
            c.n_objectives = p.n_objectives;
            c.n_interest = p.n_interest;
            if (j.contains("hub")) c.hub = hub::config_from_json(j.at("hub"), p.hub);
        } else {
            c.preset.clear();
            c.n_interest = 0;
        }
        read(j, "fallback_scale", c.fallback_scale);
        if (j.contains("methods")) {
            c.methods.clear();
            for (const auto& m : j.at("methods")) c.methods.push_back(method_from(m.get<std::string>()));
        }
        read(j, "epsilon", c.epsilon);
        read(j, "n_objectives", c.n_objectives);
        read(j, "n_interest", c.n_interest);
        read(j, "seed", c.seed);
        if (j.contains("funplex")) {
            const auto& f = j.at("funplex");
            read(f, "record_intermediaries", c.funplex.record_intermediaries);
            read(f, "check_all_objectives", c.funplex.check_all_objectives);
            read(f, "warm_start", c.funplex.warm_start);
            read(f, "scale_variables", c.funplex.scale_variables);
        }
        if (j.contains("spores")) {
            const auto& s = j.at("spores");
            read(s, "r0", c.spores.r0);
            read(s, "gamma", c.spores.gamma);
            read(s, "n_max", c.spores.n_max);
            if (s.contains("ab_pairs")) {
                c.spores.ab_pairs.clear();
                for (const auto& ab : s.at("ab_pairs"))
                    c.spores.ab_pairs.emplace_back(ab.at(0).get<double>(), ab.at(1).get<double>());
            }
        }
        if (j.contains("random_directions")) {
            const std::string iv = j.at("random_directions").value("interval", "symmetric");
            if (iv == "symmetric") c.interval = baselines::BetaInterval::kSymmetric;
            else if (iv == "positive") c.interval = baselines::BetaInterval::kPositive;
            else fail(ErrorCode::kInvalidArgument, "unknown interval '" + iv + "'");
        }
        if (j.contains("volume")) {
            const auto& v = j.at("volume");
            const std::string m = v.value("method", "auto");
            if (m == "auto") c.volume_method = metrics::VolumeMethod::kAuto;
            else if (m == "exact") c.volume_method = metrics::VolumeMethod::kExact;
            else if (m == "monte_carlo") c.volume_method = metrics::VolumeMethod::kMonteCarlo;
            else fail(ErrorCode::kInvalidArgument, "unknown volume method '" + m + "'");
            read(v, "samples", c.volume_samples);
        }
        if (j.contains("outlines")) {
            read(j.at("outlines"), "enabled", c.outlines);
            read(j.at("outlines"), "directions", c.outline_directions);
        }
        read(j, "keep_full_vertices", c.keep_full_vertices);
        read(j, "solve_threads", c.solve_threads);
        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            c.sweep_axis = sweep_axis_from(s.value("axis", "none"));
            read(s, "grid", c.sweep_grid);
            read(s, "threads", c.sweep_threads);
        }
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("experiment config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open config '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    if (c.lp_file.empty()) {
        j["preset"] = c.preset;
        j["hub"] = hub::to_json(c.hub);
    } else {
        j["lp_file"] = c.lp_file;
        j["fallback_scale"] = c.fallback_scale;
    }
    j["methods"] = json::array();
    for (auto m : c.methods) j["methods"].push_back(to_string(m));
    j["epsilon"] = c.epsilon;
    j["n_objectives"] = c.n_objectives;
    j["n_interest"] = c.n_interest;
    j["seed"] = c.seed;
    j["funplex"] = {{"record_intermediaries", c.funplex.record_intermediaries},
                    {"check_all_objectives", c.funplex.check_all_objectives},
                    {"warm_start", c.funplex.warm_start},
                    {"scale_variables", c.funplex.scale_variables}};
    json pairs = json::array();
    for (auto [a, b] : c.spores.ab_pairs) pairs.push_back({a, b});
    j["spores"] = {{"r0", c.spores.r0}, {"gamma", c.spores.gamma}, {"n_max", c.spores.n_max},
                   {"ab_pairs", pairs}};
    j["random_directions"] = {{"interval", baselines::to_string(c.interval)}};
    j["volume"] = {{"method", metrics::to_string(c.volume_method)}, {"samples", c.volume_samples}};
    j["outlines"] = {{"enabled", c.outlines}, {"directions", c.outline_directions}};
    j["keep_full_vertices"] = c.keep_full_vertices;
    j["solve_threads"] = c.solve_threads;
    if (c.sweep_axis != SweepAxis::kNone)
        j["sweep"] = {{"axis", to_string(c.sweep_axis)}, {"grid", c.sweep_grid},
                      {"threads", c.sweep_threads}};
    j["output_dir"] = c.output_dir.string();
    return j;
}

ExperimentConfig at_grid_point(const ExperimentConfig& config, SweepAxis axis, double value) {
    ExperimentConfig c = config;
    c.sweep_axis = SweepAxis::kNone;
    c.sweep_grid.clear();
    switch (axis) {
        case SweepAxis::kObjectives: c.n_objectives = to_count(value, "n_objectives"); break;
        case SweepAxis::kInterest: c.n_interest = to_count(value, "n_interest"); break;
        case SweepAxis::kPvSites:
            require(c.lp_file.empty(), "pv_sites sweeps need a hub model");
            c.hub.n_pv_sites = to_count(value, "pv_sites");
            break;
        case SweepAxis::kHorizon: {
            require(c.lp_file.empty(), "horizon sweeps need a hub model");
            const std::size_t hours = to_count(value, "horizon");
            require(hours >= 1, "horizon must be >= 1 h");
            c.hub.n_days = (hours + 23) / 24;
            require(hours % c.hub.n_days == 0, "horizon must split into whole days");
            c.hub.hours_per_day = hours / c.hub.n_days;
            break;
        }
        case SweepAxis::kNone: fail(ErrorCode::kInvalidArgument, "no sweep axis");
    }
    std::ostringstream v;
    v << value;
    c.name = config.name + "/" + to_string(axis) + "=" + v.str();
    c.validate();
    return c;
}

} // namespace nearopt::bench
