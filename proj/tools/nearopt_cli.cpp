// Command-line front end. Talks to the library only through nearopt.h.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nearopt/nearopt.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Failure {
    int code;
};

void check(nearopt_status s, const char* what) {
    if (s == NEAROPT_OK) return;
    std::cerr << "nearopt: " << what << " failed (" << nearopt_status_string(s)
              << "): " << nearopt_last_error() << '\n';
    throw Failure{static_cast<int>(s)};
}

struct RunDeleter {
    void operator()(nearopt_run* r) const { nearopt_run_free(r); }
};
using RunPtr = std::unique_ptr<nearopt_run, RunDeleter>;

// Flags shared by `run` and `sweep`; each one overrides the config file.
struct ExperimentFlags {
    std::string config_path;
    std::optional<std::string> preset;
    std::optional<std::string> lp_file;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_objectives;
    std::optional<std::size_t> n_interest;
    std::optional<double> epsilon;
    std::vector<std::string> methods;
    std::string out_dir;
    bool no_intermediaries = false;
    bool no_check_all = false;
    bool cold_start = false;
    bool unscaled = false;
    bool outlines = false;
    bool positive_beta = false;

    void attach(CLI::App* app) {
        app->add_option("-c,--config", config_path, "experiment config (JSON)")
            ->check(CLI::ExistingFile);
        app->add_option("--preset", preset, "hub preset");
        app->add_option("--lp", lp_file, "LP fixture instead of the hub model")
            ->check(CLI::ExistingFile);
        app->add_option("--seed", seed, "master seed");
        app->add_option("-k,--objectives", n_objectives, "number of objectives N_k");
        app->add_option("-d,--interest", n_interest, "number of interest variables N_d");
        app->add_option("-e,--epsilon", epsilon, "cost slack");
        app->add_option("-m,--methods", methods, "funplex, spores, random_directions")
            ->delimiter(',');
        app->add_option("-o,--out", out_dir, "output directory");
        app->add_flag("--no-intermediaries", no_intermediaries, "store optimal vertices only");
        app->add_flag("--no-check-all", no_check_all, "check only the current objective");
        app->add_flag("--cold-start", cold_start, "restart every objective from phase one");
        app->add_flag("--unscaled", unscaled, "unit characteristic scales");
        app->add_flag("--outlines", outlines, "compute planar reference outlines");
        app->add_flag("--positive-beta", positive_beta, "random directions on [0, 1]");
    }

    json build() const {
        json j = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            j = json::parse(in);
        }
        if (preset) j["preset"] = *preset;
        if (lp_file) j["lp_file"] = *lp_file;
        if (seed) j["seed"] = *seed;
        if (n_objectives) j["n_objectives"] = *n_objectives;
        if (n_interest) j["n_interest"] = *n_interest;
        if (epsilon) j["epsilon"] = *epsilon;
        if (!methods.empty()) j["methods"] = methods;
        if (!out_dir.empty()) j["output_dir"] = out_dir;
        if (no_intermediaries) j["funplex"]["record_intermediaries"] = false;
        if (no_check_all) j["funplex"]["check_all_objectives"] = false;
        if (cold_start) j["funplex"]["warm_start"] = false;
        if (unscaled) j["funplex"]["scale_variables"] = false;
        if (outlines) j["outlines"]["enabled"] = true;
        if (positive_beta) j["random_directions"]["interval"] = "positive";
        return j;
    }
};

std::string output_dir(const json& config) { return config.value("output_dir", "results"); }

void print_record(const json& r) {
    std::printf("%s  rows %zu  cols %zu  f_min %.6g\n", r["config"]["name"].get<std::string>().c_str(),
                r["model"]["rows"].get<std::size_t>(), r["model"]["cols"].get<std::size_t>(),
                r["model"]["f_min"].get<double>());
    std::printf("  %-18s %9s %9s %12s %10s %10s %8s\n", "method", "vertices", "pivots", "volume",
                "norm_vol", "eff_gain", "time_s");
    for (const auto& m : r["methods"]) {
        auto num = [](const json& v) { return v.is_null() ? std::string("-") : std::to_string(v.get<double>()); };
        std::printf("  %-18s %9zu %9zu %12.6g %10s %10s %8.2f\n", m["method"].get<std::string>().c_str(),
                    m["vertices"]["projections"].size(), m["pivots"].get<std::size_t>(),
                    m["volume"]["value"].get<double>(), num(m["normalized_volume"]).c_str(),
                    num(m["efficiency_gain"]).c_str(), m["wall_seconds"].get<double>());
    }
}

void write_run(const nearopt_run* run, const std::string& dir) {
    fs::create_directories(dir);
    const std::string jsonl = (fs::path(dir) / "records.jsonl").string();
    check(nearopt_run_write(run, jsonl.c_str(), dir.c_str()), "writing results");
    std::printf("results in %s\n", dir.c_str());
}

int cmd_solve(const std::string& lp_path, const std::string& preset, bool show_vertex) {
    nearopt_lp* lp = nullptr;
    if (!preset.empty()) check(nearopt_lp_from_preset(preset.c_str(), &lp), "building preset");
    else check(nearopt_lp_read_file(lp_path.c_str(), &lp), "reading LP");
    std::unique_ptr<nearopt_lp, void (*)(nearopt_lp*)> lp_guard(lp, nearopt_lp_free);

    nearopt_solution* sol = nullptr;
    check(nearopt_lp_solve(lp, &sol), "solve");
    std::unique_ptr<nearopt_solution, void (*)(nearopt_solution*)> sol_guard(sol, nearopt_solution_free);

    const nearopt_status st = nearopt_solution_status(sol);
    std::printf("status     %s\n", nearopt_status_string(st));
    std::printf("rows       %zu\ncols       %zu\n", nearopt_lp_rows(lp), nearopt_lp_cols(lp));
    if (st != NEAROPT_OK) return static_cast<int>(st);
    std::printf("objective  %.10g\npivots     %zu\n", nearopt_solution_objective(sol),
                nearopt_solution_pivots(sol));
    if (show_vertex) {
        std::vector<double> x(nearopt_solution_vertex(sol, nullptr, 0));
        nearopt_solution_vertex(sol, x.data(), x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) continue;
            const char* name = nearopt_lp_column_name(lp, i);
            std::printf("  %-24s %.10g\n", name ? name : ("x" + std::to_string(i)).c_str(), x[i]);
        }
    }
    return 0;
}

int cmd_run(const ExperimentFlags& flags) {
    const json config = flags.build();
    nearopt_run* raw = nullptr;
    check(nearopt_run_experiment(config.dump().c_str(), &raw), "experiment");
    RunPtr run(raw);
    print_record(json::parse(nearopt_run_record(run.get(), 0)));
    write_run(run.get(), output_dir(config));
    return 0;
}

int cmd_sweep(const ExperimentFlags& flags, const std::string& axis, const std::vector<double>& grid,
              std::size_t threads) {
    json config = flags.build();
    if (!axis.empty()) config["sweep"]["axis"] = axis;
    if (!grid.empty()) config["sweep"]["grid"] = grid;
    if (threads > 0) config["sweep"]["threads"] = threads;
    nearopt_run* raw = nullptr;
    check(nearopt_run_sweep(config.dump().c_str(), &raw), "sweep");
    RunPtr run(raw);
    for (std::size_t i = 0; i < nearopt_run_record_count(run.get()); ++i)
        print_record(json::parse(nearopt_run_record(run.get(), i)));
    const json summary = json::parse(nearopt_run_summary(run.get()));
    std::printf("pivot slopes vs %s:\n", summary["axis"].get<std::string>().c_str());
    for (const auto& [method, slope] : summary["pivot_slopes"].items())
        std::printf("  %-18s %.3f\n", method.c_str(), slope.get<double>());
    write_run(run.get(), output_dir(config));
    std::ofstream(fs::path(output_dir(config)) / "sweep_summary.json") << summary.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nearopt: near-optimal space exploration for linear programs"};
    app.set_version_flag("--version", std::string(nearopt_version()));
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "solve a single LP");
    std::string lp_path;
    std::string preset;
    bool show_vertex = false;
    solve->add_option("lp", lp_path, "LP file")->check(CLI::ExistingFile);
    solve->add_option("--preset", preset, "hub preset instead of a file");
    solve->add_flag("--vertex", show_vertex, "print nonzero vertex values");

    auto* run = app.add_subcommand("run", "run one experiment");
    ExperimentFlags run_flags;
    run_flags.attach(run);

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    ExperimentFlags sweep_flags;
    sweep_flags.attach(sweep);
    std::string axis;
    std::vector<double> grid;
    std::size_t threads = 0;
    sweep->add_option("--axis", axis, "horizon, pv_sites, n_objectives or n_interest");
    sweep->add_option("--grid", grid, "grid values")->delimiter(',');
    sweep->add_option("--threads", threads, "grid points run at once");

    auto* report = app.add_subcommand("report", "write tables from saved records");
    std::string records;
    std::string report_dir = "report";
    report->add_option("records", records, "records.jsonl")->required()->check(CLI::ExistingFile);
    report->add_option("-o,--out", report_dir, "output directory");

    app.add_subcommand("presets", "list hub presets");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*solve) {
            if (lp_path.empty() == preset.empty()) {
                std::cerr << "nearopt: solve needs an LP file or --preset\n";
                return 1;
            }
            return cmd_solve(lp_path, preset, show_vertex);
        }
        if (*run) return cmd_run(run_flags);
        if (*sweep) return cmd_sweep(sweep_flags, axis, grid, threads);
        if (*report) {
            check(nearopt_report(records.c_str(), report_dir.c_str()), "report");
            std::printf("tables in %s\n", report_dir.c_str());
            return 0;
        }
        for (std::size_t i = 0; i < nearopt_preset_count(); ++i) std::printf("%s\n", nearopt_preset_name(i));
        return 0;
    } catch (const Failure& f) {
        return f.code;
    } catch (const json::exception& e) {
        std::cerr << "nearopt: config: " << e.what() << '\n';
        return NEAROPT_PARSE;
    }
}
