#include "nearopt/nearopt.h"

#include <new>
#include <string>
#include <vector>

#include "nearopt/bench/config.hpp"
#include "nearopt/bench/experiment.hpp"
#include "nearopt/bench/tables.hpp"
#include "nearopt/error.hpp"
#include "nearopt/hub/energy_hub.hpp"
#include "nearopt/lp/lp_text.hpp"
#include "nearopt/lp/simplex.hpp"

struct nearopt_lp {
    nearopt::lp::StandardFormLP lp;
};

struct nearopt_solution {
    nearopt::lp::SolveResult result;
};

struct nearopt_run {
    std::vector<std::string> records;
    std::string summary = "{}";
};

namespace {

thread_local std::string last_error;

nearopt_status code_of(nearopt::ErrorCode code) {
    using nearopt::ErrorCode;
    switch (code) {
        case ErrorCode::kInvalidArgument: return NEAROPT_INVALID_ARGUMENT;
        case ErrorCode::kInfeasible: return NEAROPT_INFEASIBLE;
        case ErrorCode::kUnbounded: return NEAROPT_UNBOUNDED;
        case ErrorCode::kIterationLimit: return NEAROPT_ITERATION_LIMIT;
        case ErrorCode::kNumerical: return NEAROPT_NUMERICAL;
        case ErrorCode::kIo: return NEAROPT_IO;
        case ErrorCode::kParse: return NEAROPT_PARSE;
    }
    return NEAROPT_INTERNAL;
}

template <class F>
nearopt_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return NEAROPT_OK;
    } catch (const nearopt::Error& e) {
        last_error = e.what();
        return code_of(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return NEAROPT_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return NEAROPT_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return NEAROPT_INTERNAL;
    }
}

nearopt_status null_argument() {
    last_error = "null argument";
    return NEAROPT_INVALID_ARGUMENT;
}

nearopt::bench::ExperimentConfig parse_config(const char* text) {
    try {
        return nearopt::bench::config_from_json(nlohmann::json::parse(text));
    } catch (const nearopt::Error& e) {
        throw nearopt::Error(e.code(), std::string("config: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw nearopt::Error(nearopt::ErrorCode::kParse, std::string("config: ") + e.what());
    }
}

} // namespace

extern "C" {

const char* nearopt_version(void) { return NEAROPT_VERSION; }

const char* nearopt_status_string(nearopt_status status) {
    switch (status) {
        case NEAROPT_OK: return "ok";
        case NEAROPT_INVALID_ARGUMENT: return "invalid argument";
        case NEAROPT_INFEASIBLE: return "infeasible";
        case NEAROPT_UNBOUNDED: return "unbounded";
        case NEAROPT_ITERATION_LIMIT: return "iteration limit";
        case NEAROPT_NUMERICAL: return "numerical failure";
        case NEAROPT_IO: return "i/o error";
        case NEAROPT_PARSE: return "parse error";
        case NEAROPT_INTERNAL: break;
    }
    return "internal error";
}

const char* nearopt_last_error(void) { return last_error.c_str(); }

size_t nearopt_preset_count(void) {
    static const auto n = nearopt::hub::hub_presets().size();
    return n;
}

const char* nearopt_preset_name(size_t index) {
    static const auto names = [] {
        std::vector<std::string> v;
        for (const auto& p : nearopt::hub::hub_presets()) v.push_back(p.name);
        return v;
    }();
    return index < names.size() ? names[index].c_str() : nullptr;
}

nearopt_status nearopt_lp_read_file(const char* path, nearopt_lp** out) {
    if (!path || !out) return null_argument();
    return guarded([&] {
        *out = new nearopt_lp{nearopt::lp::read_lp_file(path).to_standard_form()};
    });
}

nearopt_status nearopt_lp_from_text(const char* text, nearopt_lp** out) {
    if (!text || !out) return null_argument();
    return guarded([&] {
        *out = new nearopt_lp{nearopt::lp::parse_lp_text(text).to_standard_form()};
    });
}

nearopt_status nearopt_lp_from_preset(const char* preset, nearopt_lp** out) {
    if (!preset || !out) return null_argument();
    return guarded([&] {
        auto model = nearopt::hub::build_hub_lp(nearopt::hub::find_preset(preset).hub);
        *out = new nearopt_lp{std::move(model.lp)};
    });
}

void nearopt_lp_free(nearopt_lp* lp) { delete lp; }

size_t nearopt_lp_rows(const nearopt_lp* lp) { return lp ? lp->lp.rows() : 0; }
size_t nearopt_lp_cols(const nearopt_lp* lp) { return lp ? lp->lp.cols() : 0; }

const char* nearopt_lp_column_name(const nearopt_lp* lp, size_t col) {
    if (!lp || col >= lp->lp.column_names().size()) return nullptr;
    return lp->lp.column_names()[col].c_str();
}

nearopt_status nearopt_lp_solve(const nearopt_lp* lp, nearopt_solution** out) {
    if (!lp || !out) return null_argument();
    return guarded([&] {
        nearopt::lp::SolveResult r;
        try {
            r = nearopt::lp::solve(lp->lp);
        } catch (const nearopt::Error& e) {
            if (e.code() != nearopt::ErrorCode::kInfeasible) throw;
            r.status = nearopt::lp::SolveStatus::kInfeasible;
        }
        *out = new nearopt_solution{std::move(r)};
    });
}

void nearopt_solution_free(nearopt_solution* solution) { delete solution; }

nearopt_status nearopt_solution_status(const nearopt_solution* solution) {
    if (!solution) return null_argument();
    switch (solution->result.status) {
        case nearopt::lp::SolveStatus::kOptimal: return NEAROPT_OK;
        case nearopt::lp::SolveStatus::kUnbounded: return NEAROPT_UNBOUNDED;
        case nearopt::lp::SolveStatus::kInfeasible: return NEAROPT_INFEASIBLE;
    }
    return NEAROPT_INTERNAL;
}

double nearopt_solution_objective(const nearopt_solution* solution) {
    return solution ? solution->result.objective_value : 0.0;
}

size_t nearopt_solution_pivots(const nearopt_solution* solution) {
    return solution ? solution->result.phase2_pivots : 0;
}

size_t nearopt_solution_vertex(const nearopt_solution* solution, double* values, size_t len) {
    if (!solution) return 0;
    const auto& v = solution->result.vertex;
    if (values)
        for (size_t i = 0; i < len && i < v.size(); ++i) values[i] = v[i];
    return v.size();
}

nearopt_status nearopt_run_experiment(const char* config_json, nearopt_run** out) {
    if (!config_json || !out) return null_argument();
    return guarded([&] {
        auto outcome = nearopt::bench::run_experiment(parse_config(config_json));
        auto run = new nearopt_run;
        run->records.push_back(outcome.record().dump());
        *out = run;
    });
}

nearopt_status nearopt_run_sweep(const char* config_json, nearopt_run** out) {
    if (!config_json || !out) return null_argument();
    return guarded([&] {
        auto sweep = nearopt::bench::run_sweep(parse_config(config_json));
        auto run = new nearopt_run;
        for (const auto& p : sweep.points) run->records.push_back(p.record().dump());
        run->summary = sweep.summary().dump();
        *out = run;
    });
}

void nearopt_run_free(nearopt_run* run) { delete run; }

size_t nearopt_run_record_count(const nearopt_run* run) { return run ? run->records.size() : 0; }

const char* nearopt_run_record(const nearopt_run* run, size_t index) {
    if (!run || index >= run->records.size()) return nullptr;
    return run->records[index].c_str();
}

const char* nearopt_run_summary(const nearopt_run* run) { return run ? run->summary.c_str() : "{}"; }

nearopt_status nearopt_run_write(const nearopt_run* run, const char* jsonl_path, const char* dir) {
    if (!run || !jsonl_path || !dir) return null_argument();
    return guarded([&] {
        std::vector<nlohmann::json> records;
        for (const auto& r : run->records) {
            records.push_back(nlohmann::json::parse(r));
            nearopt::bench::append_record(jsonl_path, records.back());
        }
        nearopt::bench::emit_tables(records, dir);
    });
}

nearopt_status nearopt_report(const char* jsonl_path, const char* dir) {
    if (!jsonl_path || !dir) return null_argument();
    return guarded([&] {
        nearopt::bench::emit_tables(nearopt::bench::read_records(jsonl_path), dir);
    });
}

} // extern "C"
