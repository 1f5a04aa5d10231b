#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "nearopt/hub/energy_hub.hpp"

namespace nearopt::hub {

nlohmann::json to_json(const HubParameters& params);
/// Keys missing from `j` keep their values from `base`.
HubParameters parameters_from_json(const nlohmann::json& j,
                                   const HubParameters& base = HubParameters::defaults());
HubParameters load_parameters(const std::filesystem::path& path);

nlohmann::json to_json(const HubConfig& config);
HubConfig config_from_json(const nlohmann::json& j, const HubConfig& base = {});

} // namespace nearopt::hub
