#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nearopt/nearopt.h"

namespace fs = std::filesystem;

TEST_CASE("C API solves LPs from text, files and presets") {
    nearopt_lp* lp = nullptr;
    REQUIRE(nearopt_lp_from_text("min -1 -1\n1 0 <= 1\n0 1 <= 1\n", &lp) == NEAROPT_OK);
    CHECK(nearopt_lp_rows(lp) == 2);
    CHECK(nearopt_lp_cols(lp) == 4);
    nearopt_solution* sol = nullptr;
    REQUIRE(nearopt_lp_solve(lp, &sol) == NEAROPT_OK);
    CHECK(nearopt_solution_status(sol) == NEAROPT_OK);
    CHECK(nearopt_solution_objective(sol) == doctest::Approx(-2.0));
    std::vector<double> x(nearopt_solution_vertex(sol, nullptr, 0));
    REQUIRE(x.size() == 4);
    nearopt_solution_vertex(sol, x.data(), x.size());
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
    nearopt_solution_free(sol);
    nearopt_lp_free(lp);

    REQUIRE(nearopt_lp_read_file(NEAROPT_FIXTURE_DIR "/diet.lp", &lp) == NEAROPT_OK);
    CHECK(std::string(nearopt_lp_column_name(lp, 0)) == "bread");
    CHECK(nearopt_lp_column_name(lp, 1000) == nullptr);
    nearopt_lp_free(lp);

    REQUIRE(nearopt_lp_from_preset("base", &lp) == NEAROPT_OK);
    CHECK(nearopt_lp_rows(lp) == 361);
    nearopt_lp_free(lp);

    REQUIRE(nearopt_lp_from_text("min 1\n1 <= -1\n", &lp) == NEAROPT_OK);
    REQUIRE(nearopt_lp_solve(lp, &sol) == NEAROPT_OK);
    CHECK(nearopt_solution_status(sol) == NEAROPT_INFEASIBLE);
    nearopt_solution_free(sol);
    nearopt_lp_free(lp);

    REQUIRE(nearopt_lp_from_text("min -1\n-1 <= 1\n", &lp) == NEAROPT_OK);
    REQUIRE(nearopt_lp_solve(lp, &sol) == NEAROPT_OK);
    CHECK(nearopt_solution_status(sol) == NEAROPT_UNBOUNDED);
    nearopt_solution_free(sol);
    nearopt_lp_free(lp);
}

TEST_CASE("C API reports errors through status codes") {
    nearopt_lp* lp = nullptr;
    CHECK(nearopt_lp_from_text("garbage\n", &lp) == NEAROPT_PARSE);
    CHECK(std::strlen(nearopt_last_error()) > 0);
    CHECK(lp == nullptr);
    CHECK(nearopt_lp_read_file("/nonexistent.lp", &lp) == NEAROPT_IO);
    CHECK(nearopt_lp_from_preset("nope", &lp) == NEAROPT_INVALID_ARGUMENT);
    CHECK(nearopt_lp_from_text(nullptr, &lp) == NEAROPT_INVALID_ARGUMENT);
    nearopt_run* run = nullptr;
    CHECK(nearopt_run_experiment("{not json", &run) == NEAROPT_PARSE);
    CHECK(std::string(nearopt_last_error()).starts_with("config: "));
    CHECK(nearopt_run_experiment(R"({"epsilon": -1})", &run) == NEAROPT_INVALID_ARGUMENT);
    CHECK(nearopt_run_sweep(R"({"preset": "horizon_6"})", &run) == NEAROPT_INVALID_ARGUMENT);
    CHECK(std::string(nearopt_status_string(NEAROPT_UNBOUNDED)) == "unbounded");
    CHECK(nearopt_preset_count() > 10);
    CHECK(std::string(nearopt_preset_name(0)) == "base");
    CHECK(nearopt_preset_name(100000) == nullptr);
}

TEST_CASE("C API runs experiments and writes results") {
    const char* config = R"({"preset": "horizon_6", "n_objectives": 12, "n_interest": 2})";
    nearopt_run* run = nullptr;
    REQUIRE(nearopt_run_experiment(config, &run) == NEAROPT_OK);
    REQUIRE(nearopt_run_record_count(run) == 1);
    auto rec = nlohmann::json::parse(nearopt_run_record(run, 0));
    CHECK(rec["methods"].size() == 3);
    CHECK(std::string(nearopt_run_summary(run)) == "{}");

    const auto dir = fs::temp_directory_path() / "nearopt_c_api";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto jsonl = (dir / "records.jsonl").string();
    REQUIRE(nearopt_run_write(run, jsonl.c_str(), dir.string().c_str()) == NEAROPT_OK);
    CHECK(fs::exists(dir / "quality.csv"));
    nearopt_run_free(run);

    const auto rep = (dir / "report").string();
    CHECK(nearopt_report(jsonl.c_str(), rep.c_str()) == NEAROPT_OK);
    CHECK(fs::exists(dir / "report" / "efficiency.csv"));

    const char* sweep = R"({"preset": "horizon_6", "n_interest": 2, "methods": ["funplex"],
                            "sweep": {"axis": "n_objectives", "grid": [5, 10, 20]}})";
    REQUIRE(nearopt_run_sweep(sweep, &run) == NEAROPT_OK);
    CHECK(nearopt_run_record_count(run) == 3);
    auto summary = nlohmann::json::parse(nearopt_run_summary(run));
    CHECK(summary["pivot_slopes"].contains("funplex"));
    nearopt_run_free(run);
    fs::remove_all(dir);
}
