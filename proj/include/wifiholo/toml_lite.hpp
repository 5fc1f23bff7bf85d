#pragma once

// A small subset of TOML: comments, [table], [a.b], [[array.of.tables]],
// key = value with integers, floats (inf/nan included), booleans, basic
// strings and single-line arrays.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wifiholo {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line = 0, std::string key = {});
    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

struct TomlValue;
using TomlArray = std::vector<TomlValue>;
using TomlTable = std::map<std::string, TomlValue>;
using TomlTableArray = std::vector<TomlTable>;

struct TomlValue {
    std::variant<bool, std::int64_t, double, std::string, TomlArray, std::shared_ptr<TomlTable>,
                 std::shared_ptr<TomlTableArray>>
        data;
    int line = 0;

    bool is_table() const { return std::holds_alternative<std::shared_ptr<TomlTable>>(data); }
    bool is_table_array() const { return std::holds_alternative<std::shared_ptr<TomlTableArray>>(data); }
    TomlTable& table() { return *std::get<std::shared_ptr<TomlTable>>(data); }
    const TomlTable& table() const { return *std::get<std::shared_ptr<TomlTable>>(data); }
    TomlTableArray& table_array() { return *std::get<std::shared_ptr<TomlTableArray>>(data); }
    const TomlTableArray& table_array() const { return *std::get<std::shared_ptr<TomlTableArray>>(data); }
};

TomlTable parse_toml(std::string_view text);

// Parses a bare value ("1.5", "[1, 2]", "\"hann\"", "true").
TomlValue parse_toml_value(std::string_view text, int line = 0);

// Applies "a.b.c=value", creating intermediate tables as needed.
void apply_override(TomlTable& root, std::string_view assignment);

std::string format_number(double v);

}  // namespace wifiholo
