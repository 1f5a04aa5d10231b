#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"

namespace nearopt::bench {

/// Writes from RunRecords:
///   quality.csv      normalized volumes and volume gains
///   efficiency.csv   pivots, complexity label, runtime, efficiency gains
///   outline_<i>_<j>.csv  projected hull outlines per method and reference
///   sweep.csv        one row per (record, method) when records form a sweep
/// Returns the written paths.
std::vector<std::filesystem::path> emit_tables(const std::vector<nlohmann::json>& records,
                                               const std::filesystem::path& dir);

std::vector<nlohmann::json> read_records(const std::filesystem::path& jsonl);
void append_record(const std::filesystem::path& jsonl, const nlohmann::json& record);

} // namespace nearopt::bench
