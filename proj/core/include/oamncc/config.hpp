#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace oamncc {

enum class ConfigType { real, integer, boolean, text };

struct ConfigEntry {
    const char* key;
    ConfigType type;
    double min;
    double max;
    const char* default_value;
    const char* allowed; // comma-separated values for text entries, else nullptr
    const char* help;
};

/**
 * Flat dotted-key configuration. Values are stored as strings and validated
 * against the declared schema on every set: unknown keys are rejected and
 * numeric values are range-checked. Precedence is resolved by the caller
 * (CLI flag > config file > default) through call order.
 */
class Config {
public:
    Config(); // all defaults

    static const std::vector<ConfigEntry>& schema();

    /// Throws ConfigError on unknown key, type mismatch or range violation.
    void set(const std::string& key, const std::string& value);
    /// Accepts a single "key=value" token.
    void apply_override(const std::string& assignment);
    /// Reads a flat key=value file; '#' starts a comment, blank lines skipped.
    void load_file(const std::string& path);

    double real(std::string_view key) const;
    long integer(std::string_view key) const;
    bool boolean(std::string_view key) const;
    const std::string& text(std::string_view key) const;

    /// Full resolved view (defaults merged with overrides), sorted by key.
    const std::map<std::string, std::string>& resolved() const { return values_; }

private:
    const std::string& raw(std::string_view key) const;

    std::map<std::string, std::string> values_;
};

} // namespace oamncc
