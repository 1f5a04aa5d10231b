#include "nearopt/bench/tables.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "nearopt/error.hpp"
#include "nearopt/metrics/outline.hpp"

namespace nearopt::bench {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    std::ostringstream os;
    os << std::setprecision(12) << v.get<double>();
    return os.str();
}

class Csv {
public:
    Csv(const fs::path& path, std::initializer_list<const char*> header) : path_(path), out_(path) {
        if (!out_) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
        bool first = true;
        for (const char* h : header) {
            out_ << (first ? "" : ",") << h;
            first = false;
        }
        out_ << '\n';
    }
    void row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
    }
    const fs::path& path() const noexcept { return path_; }

private:
    fs::path path_;
    std::ofstream out_;
};

std::string record_name(const json& r) { return r.at("config").value("name", "run"); }

std::string horizon_hours(const json& cfg) {
    if (!cfg.contains("hub")) return "";
    const auto& h = cfg.at("hub");
    return std::to_string(h.value("hours_per_day", 0) * h.value("n_days", 0));
}

std::string pv_sites(const json& cfg) {
    return cfg.contains("hub") ? cell(cfg.at("hub").value("n_pv_sites", json(nullptr))) : "";
}

void write_outlines(const json& r, const std::string& prefix, std::vector<fs::path>& written,
                    const fs::path& dir) {
    const auto& names = r.at("model").at("interest_names");
    const std::size_t d = names.size();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            Csv csv(dir / (prefix + "outline_" + std::to_string(i) + "_" + std::to_string(j) + ".csv"),
                    {"source", "order", names[i].get<std::string>().c_str(),
                     names[j].get<std::string>().c_str()});
            for (const auto& m : r.at("methods")) {
                const auto& proj = m.at("vertices").at("projections");
                if (proj.size() < 3) continue;
                metrics::PointCloud cloud{d, proj.get<std::vector<std::vector<double>>>(),
                                          metrics::CloudSource::kOther};
                const auto outline = metrics::projection_outline(cloud, {i, j});
                for (std::size_t k = 0; k < outline.vertices.size(); ++k)
                    csv.row({m.at("method").get<std::string>(), std::to_string(k),
                             cell(outline.vertices[k][0]), cell(outline.vertices[k][1])});
            }
            for (const auto& o : r.value("outlines", json::array())) {
                if (o.at("dims") != json{i, j}) continue;
                std::size_t k = 0;
                for (const auto& p : o.at("reference"))
                    csv.row({"planar_reference", std::to_string(k++), cell(p.at(0)), cell(p.at(1))});
            }
            written.push_back(csv.path());
        }
    }
}

} // namespace

std::vector<fs::path> emit_tables(const std::vector<json>& records, const fs::path& dir) {
    require(!records.empty(), "no records to tabulate");
    fs::create_directories(dir);
    std::vector<fs::path> written;
    try {
        Csv quality(dir / "quality.csv", {"record", "method", "vertices", "volume", "volume_method",
                                          "standard_error", "normalized_volume", "volume_gain"});
        Csv efficiency(dir / "efficiency.csv",
                       {"record", "method", "objectives", "pivots", "pivot_flops", "complexity",
                        "wall_seconds", "efficiency_gain"});
        for (const auto& r : records) {
            for (const auto& m : r.at("methods")) {
                const auto& v = m.at("volume");
                quality.row({record_name(r), cell(m.at("method")),
                             std::to_string(m.at("vertices").at("projections").size()),
                             cell(v.at("value")), cell(v.at("method")), cell(v.at("standard_error")),
                             cell(m.at("normalized_volume")), cell(m.at("volume_gain"))});
                efficiency.row({record_name(r), cell(m.at("method")), cell(m.at("objectives")),
                                cell(m.at("pivots")), cell(m.at("pivot_flops")),
                                cell(m.at("complexity")), cell(m.at("wall_seconds")),
                                cell(m.at("efficiency_gain"))});
            }
        }
        written.push_back(quality.path());
        written.push_back(efficiency.path());

        for (std::size_t k = 0; k < records.size(); ++k) {
            const std::string prefix = records.size() == 1 ? "" : "r" + std::to_string(k) + "_";
            write_outlines(records[k], prefix, written, dir);
        }

        if (records.size() > 1) {
            Csv sweep(dir / "sweep.csv",
                      {"record", "method", "horizon_hours", "pv_sites", "n_objectives", "n_interest",
                       "rows", "cols", "pivots", "normalized_volume", "volume_gain",
                       "efficiency_gain"});
            for (const auto& r : records) {
                const auto& cfg = r.at("config");
                for (const auto& m : r.at("methods"))
                    sweep.row({record_name(r), cell(m.at("method")), horizon_hours(cfg),
                               pv_sites(cfg), cell(cfg.at("n_objectives")),
                               cell(r.at("model").at("interest_columns").size()),
                               cell(r.at("model").at("rows")), cell(r.at("model").at("cols")),
                               cell(m.at("pivots")), cell(m.at("normalized_volume")),
                               cell(m.at("volume_gain")), cell(m.at("efficiency_gain"))});
            }
            written.push_back(sweep.path());
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("malformed run record: ") + e.what());
    }
    return written;
}

std::vector<json> read_records(const fs::path& jsonl) {
    std::ifstream in(jsonl);
    if (!in) fail(ErrorCode::kIo, "cannot open '" + jsonl.string() + "'");
    std::vector<json> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::exception& e) {
            fail(ErrorCode::kParse, jsonl.string() + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

void append_record(const fs::path& jsonl, const json& record) {
    if (jsonl.has_parent_path()) fs::create_directories(jsonl.parent_path());
    std::ofstream out(jsonl, std::ios::app);
    if (!out) fail(ErrorCode::kIo, "cannot write '" + jsonl.string() + "'");
    out << record.dump() << '\n';
}

} // namespace nearopt::bench
