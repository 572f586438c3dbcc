#pragma once

#include <map>
#include <string>
#include <vector>

namespace tlf {

// Minimal TOML subset, enough for module and lattice specs: [tables],
// key = value lines, values being quoted strings, integers, booleans, or
// (nested) arrays of those.  Dotted keys, dates, floats and multi-line
// strings are rejected with a line-numbered error.

struct TomlValue {
    enum class Kind { str, integer, boolean, array };
    Kind kind = Kind::str;
    std::string s;
    long i = 0;
    bool b = false;
    std::vector<TomlValue> arr;

    const std::string& as_str() const;
    long as_int() const;
    bool as_bool() const;
    const std::vector<TomlValue>& as_array() const;
};

struct TomlTable {
    std::map<std::string, TomlValue> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    const TomlValue& at(const std::string& key) const;
    long int_or(const std::string& key, long dflt) const;
    std::string str_or(const std::string& key, const std::string& dflt) const;
};

struct TomlDoc {
    TomlTable root;
    std::map<std::string, TomlTable> tables;

    bool has_table(const std::string& name) const { return tables.count(name) != 0; }
    const TomlTable& table(const std::string& name) const;
};

TomlDoc toml_parse(const std::string& text);
TomlDoc toml_parse_file(const std::string& path);

}  // namespace tlf
