#include "wifiholo/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

namespace wifiholo {

ConfigError::ConfigError(const std::string& message, int line, std::string key)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + message),
      line_(line),
      key_(std::move(key)) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_bare_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

std::string strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_string && c == '\\') {
            ++i;
            continue;
        }
        if (c == '"') in_string = !in_string;
        if (!in_string && c == '#') return std::string(line.substr(0, i));
    }
    return std::string(line);
}

class ValueParser {
public:
    ValueParser(std::string_view text, int line) : s_(text), line_(line) {}

    TomlValue parse_all() {
        skip_ws();
        TomlValue v = parse();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing characters '" + std::string(s_.substr(pos_)) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(msg, line_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    TomlValue parse() {
        if (pos_ >= s_.size()) fail("missing value");
        const char c = s_[pos_];
        if (c == '"') return make(parse_string());
        if (c == '[') return parse_array();
        if (s_.substr(pos_, 4) == "true" && !continues(pos_ + 4)) {
            pos_ += 4;
            return make(true);
        }
        if (s_.substr(pos_, 5) == "false" && !continues(pos_ + 5)) {
            pos_ += 5;
            return make(false);
        }
        return parse_number();
    }

    bool continues(std::size_t p) const { return p < s_.size() && is_bare_key_char(s_[p]); }

    template <class T>
    TomlValue make(T v) const {
        TomlValue out;
        out.data = std::move(v);
        out.line = line_;
        return out;
    }

    std::string parse_string() {
        ++pos_;
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            char c = s_[pos_++];
            if (c == '\\') {
                if (pos_ >= s_.size()) fail("unterminated escape");
                const char e = s_[pos_++];
                switch (e) {
                    case 'n': c = '\n'; break;
                    case 't': c = '\t'; break;
                    case '"': c = '"'; break;
                    case '\\': c = '\\'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            }
            out.push_back(c);
        }
        if (pos_ >= s_.size()) fail("unterminated string");
        ++pos_;
        return out;
    }

    TomlValue parse_array() {
        ++pos_;
        TomlArray items;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ']') {
            ++pos_;
            return make(std::move(items));
        }
        while (true) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ']') {  // trailing comma
                ++pos_;
                break;
            }
            items.push_back(parse());
            skip_ws();
            if (pos_ >= s_.size()) fail("unterminated array");
            if (s_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (s_[pos_] == ']') {
                ++pos_;
                break;
            }
            fail("expected ',' or ']' in array");
        }
        return make(std::move(items));
    }

    TomlValue parse_number() {
        std::size_t end = pos_;
        while (end < s_.size() && (is_bare_key_char(s_[end]) || s_[end] == '.' || s_[end] == '+')) ++end;
        std::string tok(s_.substr(pos_, end - pos_));
        if (tok.empty()) fail("invalid value");
        std::string clean;
        for (char c : tok)
            if (c != '_') clean.push_back(c);
        std::string body = clean;
        bool negative = false;
        if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
            negative = body[0] == '-';
            body.erase(0, 1);
        }
        pos_ = end;
        if (body == "inf") return make(negative ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity());
        if (body == "nan") return make(std::numeric_limits<double>::quiet_NaN());
        const bool is_float = body.find_first_of(".eE") != std::string::npos;
        const char* first = clean.data() + (clean[0] == '+' ? 1 : 0);
        const char* last = clean.data() + clean.size();
        if (!is_float) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || p != last) fail("invalid value '" + tok + "'");
            return make(v);
        }
        double v = 0.0;
        auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || p != last) fail("invalid number '" + tok + "'");
        return make(v);
    }

    std::string_view s_;
    int line_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split_key_path(std::string_view path, int line) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '.') {
            parts.push_back(std::string(trim(cur)));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(std::string(trim(cur)));
    for (const auto& p : parts) {
        if (p.empty()) throw ConfigError("empty key segment in '" + std::string(path) + "'", line);
        for (char c : p)
            if (!is_bare_key_char(c)) throw ConfigError("invalid key '" + std::string(path) + "'", line);
    }
    return parts;
}

TomlValue new_table(int line) {
    TomlValue v;
    v.data = std::make_shared<TomlTable>();
    v.line = line;
    return v;
}

// Descends into `name`, creating an implicit table; table arrays resolve to their last element.
TomlTable& descend(TomlTable& t, const std::string& name, int line, const std::string& path) {
    auto it = t.find(name);
    if (it == t.end()) it = t.emplace(name, new_table(line)).first;
    if (it->second.is_table()) return it->second.table();
    if (it->second.is_table_array()) {
        auto& arr = it->second.table_array();
        if (arr.empty()) throw ConfigError("empty table array '" + path + "'", line);
        return arr.back();
    }
    throw ConfigError("key '" + path + "' is not a table", line, path);
}

}  // namespace

TomlValue parse_toml_value(std::string_view text, int line) { return ValueParser(text, line).parse_all(); }

TomlTable parse_toml(std::string_view text) {
    TomlTable root;
    TomlTable* current = &root;
    std::string current_path;
    std::set<std::string> defined_tables;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string line = strip_comment(raw);
        std::string_view s = trim(line);
        if (s.empty()) continue;

        if (s.substr(0, 2) == "[[") {
            if (s.size() < 4 || s.substr(s.size() - 2) != "]]") throw ConfigError("malformed table-array header", line_no);
            const std::string path(trim(s.substr(2, s.size() - 4)));
            const auto parts = split_key_path(path, line_no);
            TomlTable* t = &root;
            for (std::size_t k = 0; k + 1 < parts.size(); ++k) t = &descend(*t, parts[k], line_no, path);
            auto it = t->find(parts.back());
            if (it == t->end()) {
                TomlValue v;
                v.data = std::make_shared<TomlTableArray>();
                v.line = line_no;
                it = t->emplace(parts.back(), std::move(v)).first;
            } else if (!it->second.is_table_array()) {
                throw ConfigError("'" + path + "' already defined as a non-array", line_no, path);
            }
            it->second.table_array().emplace_back();
            current = &it->second.table_array().back();
            current_path = path;
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("malformed table header", line_no);
            const std::string path(trim(s.substr(1, s.size() - 2)));
            const auto parts = split_key_path(path, line_no);
            if (!defined_tables.insert(path).second) throw ConfigError("table '" + path + "' defined twice", line_no, path);
            TomlTable* t = &root;
            for (const auto& p : parts) t = &descend(*t, p, line_no, path);
            current = t;
            current_path = path;
            continue;
        }

        const std::size_t eq = s.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const std::string key(trim(s.substr(0, eq)));
        const std::string full = current_path.empty() ? key : current_path + "." + key;
        split_key_path(key, line_no);
        if (key.find('.') != std::string::npos) throw ConfigError("dotted keys are not supported: '" + key + "'", line_no, full);
        std::string value_text(trim(s.substr(eq + 1)));
        // Arrays may continue over several lines.
        auto depth = [](const std::string& v) {
            int d = 0;
            bool in_str = false;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (in_str && v[i] == '\\') {
                    ++i;
                    continue;
                }
                if (v[i] == '"') in_str = !in_str;
                if (!in_str && v[i] == '[') ++d;
                if (!in_str && v[i] == ']') --d;
            }
            return d;
        };
        const int start_line = line_no;
        while (depth(value_text) > 0 && pos <= text.size()) {
            const std::size_t nl2 = text.find('\n', pos);
            std::string_view more = text.substr(pos, nl2 == std::string_view::npos ? std::string_view::npos : nl2 - pos);
            pos = (nl2 == std::string_view::npos) ? text.size() + 1 : nl2 + 1;
            ++line_no;
            value_text += " " + strip_comment(more);
        }
        if (current->count(key)) throw ConfigError("duplicate key '" + full + "'", start_line, full);
        current->emplace(key, parse_toml_value(value_text, start_line));
    }
    return root;
}

void apply_override(TomlTable& root, std::string_view assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("override must look like key=value: '" + std::string(assignment) + "'");
    const std::string path(trim(assignment.substr(0, eq)));
    const std::string value(trim(assignment.substr(eq + 1)));
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char c : path) {
            if (c == '.') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        parts.push_back(cur);
    }
    TomlTable* t = &root;
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
        std::string name = parts[k];
        std::optional<std::size_t> index;
        if (const auto lb = name.find('['); lb != std::string::npos && name.back() == ']') {
            index = std::stoul(name.substr(lb + 1, name.size() - lb - 2));
            name = name.substr(0, lb);
        }
        if (index) {
            auto it = t->find(name);
            if (it == t->end() || !it->second.is_table_array() || *index >= it->second.table_array().size())
                throw ConfigError("override: no element '" + parts[k] + "'", 0, path);
            t = &it->second.table_array()[*index];
        } else {
            t = &descend(*t, name, 0, path);
        }
    }
    if (parts.back().empty()) throw ConfigError("override: empty key", 0, path);
    (*t)[parts.back()] = parse_toml_value(value, 0);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, p);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

}  // namespace wifiholo
