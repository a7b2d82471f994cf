#include "ude/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ude {
namespace {

using nlohmann::json;

constexpr std::size_t kFesPerDimension = 20000;

template <typename T>
T field(const json& j, const std::string& key)
{
    try {
        if constexpr (std::is_same_v<T, std::size_t>) {
            if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
                throw ConfigError("");
        } else if constexpr (std::is_same_v<T, double>) {
            if (!j.is_number())
                throw ConfigError("");
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!j.is_boolean())
                throw ConfigError("");
        }
        return j.get<T>();
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

}  // namespace

json load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config file '" + path + "' must hold a JSON object");
    return j;
}

EngineConfig resolve_config(const ConfigRequest& request, const json& overrides)
{
    EngineConfig c = EngineConfig::preset(request.mode);
    bool top_given = false;
    bool fes_given = false;

    if (!overrides.is_null() && !overrides.is_object())
        throw ConfigError("config overrides must be a JSON object");
    for (const auto& [key, value] : overrides.items()) {
        if (key == "np") c.np = field<std::size_t>(value, key);
        else if (key == "top_size") { c.top_size = field<std::size_t>(value, key); top_given = true; }
        else if (key == "learning_period") c.learning_period = field<std::size_t>(value, key);
        else if (key == "sg") c.sg = field<std::size_t>(value, key);
        else if (key == "sprop") c.sprop = field<double>(value, key);
        else if (key == "max_fes") { c.max_fes = field<std::size_t>(value, key); fes_given = true; }
        else if (key == "eps_lambda") c.eps_lambda = field<double>(value, key);
        else if (key == "eps_p") c.eps_p = field<double>(value, key);
        else if (key == "eps_tc_fraction") c.eps_tc_fraction = field<double>(value, key);
        else if (key == "cp_cap") c.cp_cap = field<double>(value, key);
        else if (key == "cp_min") c.cp_min = field<double>(value, key);
        else if (key == "pbest_fraction") c.pbest_fraction = field<double>(value, key);
        else if (key == "memory_size") c.memory_size = field<std::size_t>(value, key);
        else if (key == "exponential_crossover_dimension")
            c.exponential_crossover_dimension = field<std::size_t>(value, key);
        else if (key == "parallel_evaluation") c.parallel_evaluation = field<bool>(value, key);
        else if (key == "trace") c.trace = field<bool>(value, key);
        else if (key == "mode") {
            if (!value.is_string() || parse_mode(value.get<std::string>()) != request.mode)
                throw ConfigError("config field 'mode' disagrees with the selected mode");
        }
        else
            throw ConfigError("unknown config field '" + key + "'");
    }

    if (!top_given)
        c.top_size = request.mode == Mode::ude2
                         ? c.np / 2
                         : static_cast<std::size_t>(std::lround(static_cast<double>(c.np) / 4.0));
    if (request.max_fes)
        c.max_fes = *request.max_fes;
    else if (!fes_given)
        c.max_fes = kFesPerDimension * request.dimension;
    c.trace = c.trace || request.trace;
    c.mode = request.mode;
    c.validate();
    return c;
}

json config_to_json(const EngineConfig& c)
{
    return json{{"np", c.np},
                {"top_size", c.top_size},
                {"learning_period", c.learning_period},
                {"sg", c.sg},
                {"sprop", c.sprop},
                {"max_fes", c.max_fes},
                {"eps_lambda", c.eps_lambda},
                {"eps_p", c.eps_p},
                {"eps_tc_fraction", c.eps_tc_fraction},
                {"cp_cap", c.cp_cap},
                {"cp_min", c.cp_min},
                {"pbest_fraction", c.pbest_fraction},
                {"memory_size", c.memory_size},
                {"exponential_crossover_dimension", c.exponential_crossover_dimension},
                {"parallel_evaluation", c.parallel_evaluation},
                {"trace", c.trace},
                {"mode", to_string(c.mode)}};
}

}  // namespace ude
