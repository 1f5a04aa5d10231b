#include "nearopt/bench/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <future>

#include "nearopt/baselines/random_directions.hpp"
#include "nearopt/baselines/spores.hpp"
#include "nearopt/error.hpp"
#include "nearopt/hub/energy_hub.hpp"
#include "nearopt/lp/lp_text.hpp"
#include "nearopt/metrics/indicators.hpp"
#include "nearopt/mga/directions.hpp"
#include "nearopt/mga/funplex.hpp"
#include "nearopt/rng.hpp"

namespace nearopt::bench {

using nlohmann::json;

namespace {

template <class F>
auto stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.code(), name + ": " + e.what());
    }
}

struct Model {
    lp::StandardFormLP lp;
    std::vector<std::size_t> interest;
    std::vector<double> fallback;
    baselines::CapacityGroups capacity_groups;
};

Model build_model(const ExperimentConfig& c) {
    Model m;
    if (!c.lp_file.empty()) {
        m.lp = lp::read_lp_file(c.lp_file).to_standard_form();
        m.interest = m.lp.interest_columns();
        if (c.n_interest > 0) {
            require(c.n_interest <= m.interest.size(),
                    "n_interest exceeds the fixture's interest columns");
            m.interest.resize(c.n_interest);
        }
        require(!m.interest.empty(), "LP fixture has no interest columns");
        m.fallback = {c.fallback_scale};
        for (std::size_t col : m.interest) m.capacity_groups.push_back({col});
        return m;
    }
    hub::HubModel model = hub::build_hub_lp(c.hub);
    m.interest = model.interest_for(c.n_interest);
    m.fallback = model.fallback_scales(c.n_interest);
    m.capacity_groups = baselines::hub_capacity_groups(model);
    m.lp = std::move(model.lp);
    return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* complexity_label(Method m) {
    return m == Method::kFunplex ? "O(n(m+N_k))" : "O(nm)";
}

json volume_json(const metrics::HullVolumeResult& v) {
    return {{"value", v.volume},   {"method", metrics::to_string(v.method)},
            {"standard_error", v.standard_error}, {"points", v.points},
            {"facets", v.facets},  {"degenerate", v.degenerate}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

} // namespace

const MethodOutcome* ExperimentOutcome::find(Method m) const {
    for (const auto& o : methods)
        if (o.method == m) return &o;
    return nullptr;
}

json ExperimentOutcome::record() const {
    json r;
    r["format"] = "nearopt-run-record/1";
    r["software_version"] = NEAROPT_VERSION;
    r["timestamp"] = utc_now();
    r["config"] = to_json(config);
    r["model"] = {{"rows", rows},
                  {"cols", cols},
                  {"f_min", f_min},
                  {"budget", budget},
                  {"interest_columns", interest_columns},
                  {"interest_names", interest_names},
                  {"scales", scales}};
    r["methods"] = json::array();
    for (const auto& m : methods) {
        json projections = json::array();
        json costs = json::array();
        json tags = json::array();
        for (const auto& v : m.store.entries()) {
            projections.push_back(v.projection);
            costs.push_back(v.cost);
            tags.push_back(mga::to_string(v.tag));
        }
        r["methods"].push_back({{"method", to_string(m.method)},
                                {"objectives", m.objectives},
                                {"pivots", m.pivots},
                                {"pivot_flops", m.pivot_flops},
                                {"failed_solves", m.failed_solves},
                                {"complexity", complexity_label(m.method)},
                                {"wall_seconds", m.wall_seconds},
                                {"vertices", {{"projections", projections},
                                              {"costs", costs},
                                              {"tags", tags}}},
                                {"volume", volume_json(m.volume)},
                                {"normalized_volume", optional_json(m.normalized_volume)},
                                {"volume_gain", optional_json(m.volume_gain)},
                                {"efficiency_gain", optional_json(m.efficiency_gain)}});
    }
    r["outlines"] = json::array();
    for (const auto& o : outlines) {
        json pts = json::array();
        for (const auto& p : o.reference.vertices) pts.push_back({p[0], p[1]});
        r["outlines"].push_back({{"dims", o.dims}, {"reference", pts}});
    }
    return r;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    stage("config", [&] { config.validate(); return 0; });
    ExperimentOutcome out;
    out.config = config;

    Model model = stage("model", [&] { return build_model(config); });
    out.rows = model.lp.rows();
    out.cols = model.lp.cols();
    out.interest_columns = model.interest;
    for (std::size_t c : model.interest)
        out.interest_names.push_back(c < model.lp.column_names().size() ? model.lp.column_names()[c]
                                                                         : "x" + std::to_string(c));

    out.budgeted = stage("cost optimum", [&] {
        return mga::build_budgeted_lp(model.lp, config.epsilon);
    });
    const auto& budgeted = out.budgeted;
    out.f_min = budgeted.f_min;
    out.budget = budgeted.budget();
    const lp::Basis start = stage("phase one", [&] { return lp::phase_one(budgeted.lp); });
    out.scales = mga::characteristic_scales(budgeted.optimal_values(model.interest), model.fallback);
    const double dedupe = 1e-6 * *std::max_element(out.scales.begin(), out.scales.end());

    baselines::SolveSettings settings;
    settings.keep_full_vertices = config.keep_full_vertices;
    settings.dedupe_tolerance = dedupe;
    settings.threads = config.solve_threads;

    for (Method method : config.methods) {
        MethodOutcome m;
        m.method = method;
        const auto t0 = std::chrono::steady_clock::now();
        stage(to_string(method), [&] {
            if (method == Method::kFunplex) {
                mga::FunplexOptions o;
                o.n_objectives = config.n_objectives;
                o.record_intermediaries = config.funplex.record_intermediaries;
                o.check_all_objectives = config.funplex.check_all_objectives;
                o.warm_start = config.funplex.warm_start;
                o.scale_variables = config.funplex.scale_variables;
                o.keep_full_vertices = config.keep_full_vertices;
                Rng rng = make_stream(config.seed, "funplex/directions");
                auto r = mga::run_funplex(budgeted, model.interest, model.fallback, rng, o, nullptr,
                                          &start);
                m.store = std::move(r.store);
                m.objectives = config.n_objectives;
                m.pivots = r.total_pivots;
                m.pivot_flops = r.pivot_flops;
            } else if (method == Method::kSpores) {
                baselines::SporesConfig s;
                s.r0 = config.spores.r0;
                s.gamma = config.spores.gamma;
                s.ab_pairs = config.spores.ab_pairs;
                s.technologies = model.capacity_groups;
                s.n_max = config.spores.n_max;
                s.total_objectives = config.spores.n_max == 0 ? config.n_objectives : 0;
                s.settings = settings;
                auto r = baselines::run_spores(budgeted, model.interest, s, &start);
                m.store = std::move(r.mga.store);
                m.objectives = r.mga.pivots_per_solve.size() + r.mga.failed_solves;
                m.pivots = r.mga.total_pivots;
                m.pivot_flops = r.mga.pivot_flops;
                m.failed_solves = r.mga.failed_solves;
            } else {
                baselines::RandomDirectionsConfig rd;
                rd.n_objectives = config.n_objectives;
                rd.interval = config.interval;
                rd.seed = config.seed;
                rd.settings = settings;
                auto r = baselines::run_random_directions(budgeted, model.interest, rd, &start);
                m.store = std::move(r.store);
                m.objectives = config.n_objectives;
                m.pivots = r.total_pivots;
                m.pivot_flops = r.pivot_flops;
                m.failed_solves = r.failed_solves;
            }
            return 0;
        });
        m.wall_seconds = seconds_since(t0);
        out.methods.push_back(std::move(m));
    }

    stage("metrics", [&] {
        metrics::HullOptions ho;
        ho.method = config.volume_method;
        ho.samples = config.volume_samples;
        ho.seed = config.seed;
        const std::size_t d = out.scales.size();
        for (auto& m : out.methods) {
            metrics::PointCloud cloud{d, m.store.projections(), metrics::CloudSource::kOther};
            if (cloud.points.size() <= d) {
                m.volume.degenerate = true;
                m.volume.points = cloud.points.size();
                continue;
            }
            m.volume = metrics::hull_volume(metrics::scale_cloud(cloud, out.scales), ho);
        }
        const MethodOutcome* fp = out.find(Method::kFunplex);
        if (fp) {
            for (auto& m : out.methods) {
                if (fp->volume.volume > 0.0) m.normalized_volume = m.volume.volume / fp->volume.volume;
                if (m.method == Method::kFunplex) continue;
                if (m.volume.volume > 0.0)
                    m.volume_gain = metrics::volume_gain(fp->volume.volume, m.volume.volume);
                if (fp->pivots > 0)
                    m.efficiency_gain = metrics::efficiency_gain(static_cast<double>(m.pivots),
                                                                 static_cast<double>(fp->pivots));
            }
        }
        return 0;
    });

    if (config.outlines) {
        stage("outlines", [&] {
            metrics::PlanarReferenceOptions po;
            po.directions = config.outline_directions;
            for (std::size_t i = 0; i < model.interest.size(); ++i)
                for (std::size_t j = i + 1; j < model.interest.size(); ++j)
                    out.outlines.push_back(
                        {{i, j},
                         metrics::planar_reference(budgeted, {model.interest[i], model.interest[j]},
                                                   {out.scales[i], out.scales[j]}, po, &start)});
            return 0;
        });
    }
    return out;
}

json SweepOutcome::summary() const {
    json s;
    s["axis"] = to_string(axis);
    s["grid"] = grid;
    s["pivot_slopes"] = json::object();
    for (const auto& [m, slope] : pivot_slopes) s["pivot_slopes"][to_string(m)] = slope;
    s["curves"] = json::array();
    for (std::size_t g = 0; g < points.size(); ++g)
        for (const auto& m : points[g].methods)
            s["curves"].push_back({{"value", grid[g]},
                                   {"method", to_string(m.method)},
                                   {"pivots", m.pivots},
                                   {"volume", m.volume.volume},
                                   {"normalized_volume", optional_json(m.normalized_volume)},
                                   {"volume_gain", optional_json(m.volume_gain)},
                                   {"efficiency_gain", optional_json(m.efficiency_gain)}});
    return s;
}

SweepOutcome run_sweep(const ExperimentConfig& config) {
    require(config.sweep_axis != SweepAxis::kNone, "config has no sweep axis");
    require(!config.sweep_grid.empty(), "sweep grid is empty");
    SweepOutcome out;
    out.axis = config.sweep_axis;
    out.grid = config.sweep_grid;

    std::vector<ExperimentConfig> points;
    for (double v : config.sweep_grid) points.push_back(at_grid_point(config, config.sweep_axis, v));
    out.points.resize(points.size());
    if (config.sweep_threads <= 1) {
        for (std::size_t g = 0; g < points.size(); ++g) out.points[g] = run_experiment(points[g]);
    } else {
        for (std::size_t first = 0; first < points.size(); first += config.sweep_threads) {
            const std::size_t last = std::min(points.size(), first + config.sweep_threads);
            std::vector<std::future<ExperimentOutcome>> jobs;
            for (std::size_t g = first; g < last; ++g)
                jobs.push_back(std::async(std::launch::async, run_experiment, std::cref(points[g])));
            for (std::size_t g = first; g < last; ++g) out.points[g] = jobs[g - first].get();
        }
    }

    if (out.grid.size() >= 3) {
        for (Method m : config.methods) {
            std::vector<double> x;
            std::vector<double> y;
            for (std::size_t g = 0; g < out.points.size(); ++g) {
                const MethodOutcome* o = out.points[g].find(m);
                if (!o || o->pivots == 0 || out.grid[g] <= 0.0) continue;
                x.push_back(out.grid[g]);
                y.push_back(static_cast<double>(o->pivots));
            }
            if (x.size() >= 3) out.pivot_slopes.emplace_back(m, metrics::scaling_slope(x, y));
        }
    }
    return out;
}

bool same_results(const json& a, const json& b) {
    auto strip = [](json r) {
        r.erase("timestamp");
        if (r.contains("methods"))
            for (auto& m : r["methods"]) m.erase("wall_seconds");
        return r;
    };
    return strip(a) == strip(b);
}

} // namespace nearopt::bench
