#include "oamncc/config.hpp"

#include "oamncc/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace oamncc {

namespace {

constexpr double kNoLimit = -1.0;

const std::vector<ConfigEntry>& schema_table()
{
    // min/max apply to real and integer entries; kNoLimit disables a bound.
    static const std::vector<ConfigEntry> table = {
        {"sim.max_speed_kn", ConfigType::real, 1.0, 100.0, "30", nullptr,
         "ship maximum speed in knots"},
        {"sim.horizon_min", ConfigType::integer, 1, 100000, "1440", nullptr,
         "trial safety horizon in minutes"},

        {"fuel.noise_enabled", ConfigType::boolean, 0, 0, "true", nullptr,
         "draw multiplicative noise on fuel burn"},
        {"fuel.noise_sd", ConfigType::real, 0.0, 0.5, "0.05", nullptr,
         "sd of the multiplicative burn noise (mean 1.0)"},
        {"fuel.noise_min", ConfigType::real, 0.0, 1.0, "0.5", nullptr,
         "lower truncation of the burn noise factor"},
        {"fuel.noise_max", ConfigType::real, 1.0, 3.0, "1.5", nullptr,
         "upper truncation of the burn noise factor"},
        {"fuel.rate.transit", ConfigType::real, 0.0, 100.0, "1.0", nullptr,
         "fuel units per minute in transit"},
        {"fuel.rate.backtrack", ConfigType::real, 0.0, 100.0, "1.25", nullptr,
         "fuel units per minute while backtracking with lookouts"},
        {"fuel.rate.search", ConfigType::real, 0.0, 100.0, "1.5", nullptr,
         "fuel units per minute flying a search pattern"},
        {"fuel.rate.rescue", ConfigType::real, 0.0, 100.0, "0.5", nullptr,
         "fuel units per minute during a rescue"},
        {"fuel.rate.loiter", ConfigType::real, 0.0, 100.0, "0.25", nullptr,
         "fuel units per minute holding position"},

        {"belief.fuel_estimate_sd", ConfigType::real, 0.0, 10.0, "0", nullptr,
         "sd of the agent's fuel gauge error"},

        {"overboard.alert_nm", ConfigType::real, 1.0, 50.0, "20", nullptr,
         "distance from port at which the overboard alert arrives"},
        {"overboard.behind_min_nm", ConfigType::real, 0.0, 50.0, "5", nullptr,
         "minimum distance of the overboard point behind the alert"},
        {"overboard.behind_max_nm", ConfigType::real, 0.0, 50.0, "15", nullptr,
         "maximum distance of the overboard point behind the alert"},
        {"overboard.backtrack_budget_nm", ConfigType::real, 0.0, 50.0, "10", nullptr,
         "backtrack distance the fuel load safely supports"},
        {"overboard.detect_range_nm", ConfigType::real, 0.05, 5.0, "0.5", nullptr,
         "lateral range of the lookout sweep"},
        {"overboard.lateral_halfwidth_nm", ConfigType::real, 0.0, 0.5, "0.3", nullptr,
         "half-width of the sailor's lateral drift off the track"},
        {"overboard.rescue_p0", ConfigType::real, 0.0, 1.0, "0.2", nullptr,
         "rescue success probability on the first attempt minute"},
        {"overboard.rescue_dp", ConfigType::real, 0.0, 1.0, "0.1", nullptr,
         "per-minute increase of the rescue success probability"},

        {"piracy.p_eventual", ConfigType::real, 0.01, 0.999, "0.95", nullptr,
         "eventual boarding success of an unimpeded attack"},
        {"piracy.cannon_p_eventual", ConfigType::real, 0.0, 0.999, "0.10", nullptr,
         "eventual boarding success against a cannon-equipped merchant"},
        {"piracy.window_min", ConfigType::integer, 1, 240, "30", nullptr,
         "attack window length in minutes"},
        {"piracy.ransom_min", ConfigType::real, 1.0, kNoLimit, "1e6", nullptr,
         "lower bound of the log-uniform ransom draw"},
        {"piracy.ransom_max", ConfigType::real, 1.0, kNoLimit, "1e7", nullptr,
         "upper bound of the log-uniform ransom draw"},
        {"piracy.lane_x_min", ConfigType::real, 0.0, 100.0, "10", nullptr,
         "west edge of the shipping lane band"},
        {"piracy.lane_x_max", ConfigType::real, 0.0, 100.0, "14", nullptr,
         "east edge of the shipping lane band"},
        {"piracy.lane_y_min", ConfigType::real, 0.0, 200.0, "0", nullptr,
         "south end of the shipping lane band"},
        {"piracy.lane_y_max", ConfigType::real, 0.0, 200.0, "55", nullptr,
         "north end of the shipping lane band"},
        {"piracy.ownship_x", ConfigType::real, 0.0, 100.0, "12", nullptr,
         "ownship patrol station, east coordinate"},
        {"piracy.ownship_y", ConfigType::real, 0.0, 200.0, "27.5", nullptr,
         "ownship patrol station, north coordinate"},
        {"piracy.max_sample_attempts", ConfigType::integer, 1, 10000000, "100000", nullptr,
         "rejection-sampling attempt budget for merchant placement"},

        {"memo.provenance", ConfigType::text, 0, 0, "command_directive",
         "command_directive,official_regulation,sensor,social_media,unknown",
         "source class of the capability memo"},
        {"memo.dynamic_update", ConfigType::boolean, 0, 0, "true", nullptr,
         "whether the agent can fold accepted memos into its beliefs"},
        {"info.min_quality", ConfigType::real, 0.0, 1.0, "0.5", nullptr,
         "quality threshold for admitting information items"},

        {"quality.command_directive", ConfigType::real, 0.0, 1.0, "0.9", nullptr,
         "quality score of command directives"},
        {"quality.official_regulation", ConfigType::real, 0.0, 1.0, "0.85", nullptr,
         "quality score of official regulations"},
        {"quality.sensor", ConfigType::real, 0.0, 1.0, "0.7", nullptr,
         "quality score of sensor reports"},
        {"quality.social_media", ConfigType::real, 0.0, 1.0, "0.2", nullptr,
         "quality score of social media posts"},
        {"quality.unknown", ConfigType::real, 0.0, 1.0, "0.1", nullptr,
         "quality score of items with unknown provenance"},

        {"adrift.drone_speed_kn", ConfigType::real, 1.0, 300.0, "80", nullptr,
         "aerial drone speed in knots"},
        {"adrift.drone_range_nm", ConfigType::real, 0.0, 200.0, "40", nullptr,
         "aerial drone one-way range"},
        {"adrift.drone_available", ConfigType::boolean, 0, 0, "true", nullptr,
         "whether the aerial drone is aboard and serviceable"},
        {"adrift.relocate_difficulty", ConfigType::real, 0.0, 1.0, "0.2", nullptr,
         "reacquisition probability for unbeaconed flotsam"},
        {"adrift.onset_lo_min", ConfigType::integer, 1, 240, "10", nullptr,
         "earliest minute boarding attempts can begin"},
        {"adrift.onset_hi_min", ConfigType::integer, 1, 240, "20", nullptr,
         "latest minute boarding attempts can begin"},
        {"adrift.merchant_min_nm", ConfigType::real, 0.0, 100.0, "1", nullptr,
         "minimum ownship distance to the threatened merchant"},
        {"adrift.merchant_max_nm", ConfigType::real, 0.0, 100.0, "4", nullptr,
         "maximum ownship distance to the threatened merchant"},
        {"adrift.flotsam_min_nm", ConfigType::real, 0.0, 200.0, "20", nullptr,
         "minimum ownship distance to the drifting mass"},
        {"adrift.flotsam_max_nm", ConfigType::real, 0.0, 200.0, "38", nullptr,
         "maximum ownship distance to the drifting mass"},
        {"adrift.drift_speed_kn", ConfigType::real, 0.0, 5.0, "1.0", nullptr,
         "flotsam drift speed"},

        {"mc.jobs", ConfigType::integer, 0, 1024, "0", nullptr,
         "worker threads for batch execution (0 = hardware)"},
        {"mc.resample_per_strategy", ConfigType::boolean, 0, 0, "false", nullptr,
         "resample scenario instances per strategy instead of reusing them"},

        {"run.preset", ConfigType::text, 0, 0, "", nullptr,
         "scenario preset name"},
        {"run.strategy", ConfigType::text, 0, 0, "", nullptr,
         "strategy name"},
        {"run.trials", ConfigType::integer, 1, 100000000, "1000", nullptr,
         "trials per batch"},
        {"run.seed", ConfigType::text, 0, 0, "0", nullptr,
         "master seed (non-negative integer)"},
        {"run.out", ConfigType::text, 0, 0, "out", nullptr,
         "output directory"},
        {"run.formats", ConfigType::text, 0, 0, "csv,json", nullptr,
         "comma-separated output formats: csv,json,svg"},
    };
    return table;
}

const ConfigEntry* find_entry(std::string_view key)
{
    for (const auto& entry : schema_table()) {
        if (key == entry.key) {
            return &entry;
        }
    }
    return nullptr;
}

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool parse_real(const std::string& text, double& out)
{
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end != text.c_str() && *end == '\0';
}

bool parse_integer(const std::string& text, long& out)
{
    char* end = nullptr;
    out = std::strtol(text.c_str(), &end, 10);
    return end != text.c_str() && *end == '\0';
}

bool allowed_contains(const char* allowed, const std::string& value)
{
    std::stringstream ss(allowed);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token == value) {
            return true;
        }
    }
    return false;
}

} // namespace

Config::Config()
{
    for (const auto& entry : schema_table()) {
        values_[entry.key] = entry.default_value;
    }
}

const std::vector<ConfigEntry>& Config::schema()
{
    return schema_table();
}

void Config::set(const std::string& key, const std::string& value)
{
    const ConfigEntry* entry = find_entry(key);
    if (entry == nullptr) {
        throw ConfigError("unknown config key: " + key);
    }
    switch (entry->type) {
    case ConfigType::real: {
        double v = 0.0;
        if (!parse_real(value, v)) {
            throw ConfigError("config key " + key + " expects a number, got '" + value + "'");
        }
        if ((entry->min != kNoLimit && v < entry->min) || (entry->max != kNoLimit && v > entry->max)) {
            throw ConfigError("config key " + key + " out of range: " + value);
        }
        break;
    }
    case ConfigType::integer: {
        long v = 0;
        if (!parse_integer(value, v)) {
            throw ConfigError("config key " + key + " expects an integer, got '" + value + "'");
        }
        if ((entry->min != kNoLimit && v < entry->min) || (entry->max != kNoLimit && v > entry->max)) {
            throw ConfigError("config key " + key + " out of range: " + value);
        }
        break;
    }
    case ConfigType::boolean:
        if (value != "true" && value != "false" && value != "0" && value != "1") {
            throw ConfigError("config key " + key + " expects true/false, got '" + value + "'");
        }
        break;
    case ConfigType::text:
        if (entry->allowed != nullptr && !allowed_contains(entry->allowed, value)) {
            throw ConfigError("config key " + key + " does not accept '" + value + "'");
        }
        break;
    }
    values_[key] = value;
}

void Config::apply_override(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override must look like key=value: '" + assignment + "'");
    }
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        try {
            apply_override(line);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

const std::string& Config::raw(std::string_view key) const
{
    const auto it = values_.find(std::string(key));
    if (it == values_.end()) {
        throw ConfigError("unknown config key: " + std::string(key));
    }
    return it->second;
}

double Config::real(std::string_view key) const
{
    double v = 0.0;
    parse_real(raw(key), v);
    return v;
}

long Config::integer(std::string_view key) const
{
    long v = 0;
    parse_integer(raw(key), v);
    return v;
}

bool Config::boolean(std::string_view key) const
{
    const std::string& v = raw(key);
    return v == "true" || v == "1";
}

const std::string& Config::text(std::string_view key) const
{
    return raw(key);
}

} // namespace oamncc
