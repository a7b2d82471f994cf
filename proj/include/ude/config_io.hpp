#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "json.hpp"

#include "ude/core.hpp"

namespace ude {

// JSON object whose keys are EngineConfig field names. Unknown keys and
// wrongly typed values raise ConfigError.
nlohmann::json load_config_file(const std::string& path);

struct ConfigRequest {
    Mode mode = Mode::ude3;
    std::size_t dimension = 0;
    std::optional<std::size_t> max_fes;  // explicit command-line budget
    bool trace = false;
};

// Mode preset, then JSON overrides, then command-line values. Without an
// explicit top_size, np sets it (np/4 for ude3, np/2 for ude2). Without any
// explicit budget max_fes is 20000 * dimension.
EngineConfig resolve_config(const ConfigRequest& request, const nlohmann::json& overrides);

nlohmann::json config_to_json(const EngineConfig& config);

}  // namespace ude
