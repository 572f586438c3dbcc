#include "tlf/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tlf {

namespace {

[[noreturn]] void fail(size_t line, const std::string& what) {
    throw std::runtime_error("toml: line " + std::to_string(line) + ": " + what);
}

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

// value grammar: "string" | integer | true | false | [ value, ... ]
TomlValue parse_value(const std::string& s, size_t& i, size_t line) {
    skip_ws(s, i);
    if (i >= s.size()) fail(line, "missing value");
    TomlValue v;
    char c = s[i];
    if (c == '"') {
        v.kind = TomlValue::Kind::str;
        ++i;
        while (i < s.size() && s[i] != '"') {
            if (s[i] == '\\') {
                ++i;
                if (i >= s.size()) fail(line, "dangling escape");
                switch (s[i]) {
                    case 'n': v.s += '\n'; break;
                    case 't': v.s += '\t'; break;
                    case '"': v.s += '"'; break;
                    case '\\': v.s += '\\'; break;
                    default: fail(line, "unsupported escape");
                }
            } else {
                v.s += s[i];
            }
            ++i;
        }
        if (i >= s.size()) fail(line, "unterminated string");
        ++i;
        return v;
    }
    if (c == '[') {
        v.kind = TomlValue::Kind::array;
        ++i;
        skip_ws(s, i);
        if (i < s.size() && s[i] == ']') {
            ++i;
            return v;
        }
        for (;;) {
            v.arr.push_back(parse_value(s, i, line));
            skip_ws(s, i);
            if (i >= s.size()) fail(line, "unterminated array");
            if (s[i] == ',') {
                ++i;
                continue;
            }
            if (s[i] == ']') {
                ++i;
                return v;
            }
            fail(line, "expected ',' or ']' in array");
        }
    }
    if (s.compare(i, 4, "true") == 0) {
        v.kind = TomlValue::Kind::boolean;
        v.b = true;
        i += 4;
        return v;
    }
    if (s.compare(i, 5, "false") == 0) {
        v.kind = TomlValue::Kind::boolean;
        v.b = false;
        i += 5;
        return v;
    }
    if (c == '+' || c == '-' || std::isdigit((unsigned char)c)) {
        size_t j = i;
        if (c == '+' || c == '-') ++j;
        size_t digits = 0;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j, ++digits;
        if (digits == 0) fail(line, "malformed integer");
        if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E'))
            fail(line, "floats are not supported");
        v.kind = TomlValue::Kind::integer;
        v.i = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }
    fail(line, "unrecognized value");
}

bool key_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '-';
}

}  // namespace

const std::string& TomlValue::as_str() const {
    if (kind != Kind::str) throw std::runtime_error("toml: value is not a string");
    return s;
}

long TomlValue::as_int() const {
    if (kind != Kind::integer) throw std::runtime_error("toml: value is not an integer");
    return i;
}

bool TomlValue::as_bool() const {
    if (kind != Kind::boolean) throw std::runtime_error("toml: value is not a boolean");
    return b;
}

const std::vector<TomlValue>& TomlValue::as_array() const {
    if (kind != Kind::array) throw std::runtime_error("toml: value is not an array");
    return arr;
}

const TomlValue& TomlTable::at(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("toml: missing key '" + key + "'");
    return it->second;
}

long TomlTable::int_or(const std::string& key, long dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second.as_int();
}

std::string TomlTable::str_or(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second.as_str();
}

const TomlTable& TomlDoc::table(const std::string& name) const {
    auto it = tables.find(name);
    if (it == tables.end()) throw std::runtime_error("toml: missing table [" + name + "]");
    return it->second;
}

TomlDoc toml_parse(const std::string& text) {
    TomlDoc doc;
    TomlTable* cur = &doc.root;
    std::istringstream in(text);
    std::string raw;
    size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        size_t i = 0;
        skip_ws(raw, i);
        if (i >= raw.size() || raw[i] == '#') continue;
        if (raw[i] == '[') {
            size_t j = raw.find(']', i);
            if (j == std::string::npos) fail(line, "unterminated table header");
            std::string name = raw.substr(i + 1, j - i - 1);
            if (name.empty()) fail(line, "empty table name");
            cur = &doc.tables[name];
            i = j + 1;
            skip_ws(raw, i);
            if (i < raw.size() && raw[i] != '#') fail(line, "trailing content after table header");
            continue;
        }
        size_t k0 = i;
        while (i < raw.size() && key_char(raw[i])) ++i;
        if (i == k0) fail(line, "expected a key");
        std::string key = raw.substr(k0, i - k0);
        skip_ws(raw, i);
        if (i >= raw.size() || raw[i] != '=') fail(line, "expected '='");
        ++i;
        TomlValue v = parse_value(raw, i, line);
        skip_ws(raw, i);
        if (i < raw.size() && raw[i] != '#') fail(line, "trailing content after value");
        if (cur->kv.count(key)) fail(line, "duplicate key '" + key + "'");
        cur->kv.emplace(std::move(key), std::move(v));
    }
    return doc;
}

TomlDoc toml_parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("toml: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return toml_parse(buf.str());
}

}  // namespace tlf
