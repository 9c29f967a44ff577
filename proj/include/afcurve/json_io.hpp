#pragma once

// A small JSON value type with a canonical writer and a strict reader.
// The command line layer emits every structured report through dump(), so
// two runs with the same arguments produce the same bytes: object keys
// keep insertion order, numbers are written as the exact token they were
// built from, and there is no whitespace. parse() accepts standard JSON
// and preserves numeric tokens verbatim, which makes dump(parse(s)) == s
// for any s that dump produced. Integers of any size round trip exactly.

#include "common.hpp"

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afc::jio {

struct JVal {
    enum class Kind { null_v, bool_v, num_v, str_v, arr_v, obj_v };

    Kind kind = Kind::null_v;
    bool flag = false;
    std::string token; // numeric literal, kept as written
    std::string text;
    std::vector<JVal> items;
    std::vector<std::pair<std::string, JVal>> fields;

    static JVal null() { return {}; }

    static JVal boolean(bool b) {
        JVal v;
        v.kind = Kind::bool_v;
        v.flag = b;
        return v;
    }

    static JVal number(const Int& n) {
        JVal v;
        v.kind = Kind::num_v;
        v.token = int_str(n);
        return v;
    }

    static JVal number(int n) { return number(Int(n)); }
    static JVal number(long n) { return number(Int(n)); }
    static JVal number(std::size_t n) { return number(Int(n)); }

    static JVal string(std::string s) {
        JVal v;
        v.kind = Kind::str_v;
        v.text = std::move(s);
        return v;
    }

    static JVal array() {
        JVal v;
        v.kind = Kind::arr_v;
        return v;
    }

    static JVal object() {
        JVal v;
        v.kind = Kind::obj_v;
        return v;
    }

    JVal& push(JVal v) {
        if (kind != Kind::arr_v) throw std::logic_error("JVal: push on a non-array");
        items.push_back(std::move(v));
        return items.back();
    }

    // Upsert keyed by name; insertion order is what dump() will print.
    JVal& operator[](const std::string& key) {
        if (kind != Kind::obj_v) throw std::logic_error("JVal: key access on a non-object");
        for (auto& [k, v] : fields)
            if (k == key) return v;
        fields.emplace_back(key, JVal{});
        return fields.back().second;
    }

    const JVal& at(const std::string& key) const {
        if (kind != Kind::obj_v) throw std::out_of_range("JVal: key access on a non-object");
        for (const auto& [k, v] : fields)
            if (k == key) return v;
        throw std::out_of_range("JVal: missing key " + key);
    }

    friend bool operator==(const JVal& a, const JVal& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::null_v: return true;
            case Kind::bool_v: return a.flag == b.flag;
            case Kind::num_v: return a.token == b.token;
            case Kind::str_v: return a.text == b.text;
            case Kind::arr_v: return a.items == b.items;
            case Kind::obj_v: return a.fields == b.fields;
        }
        return false;
    }
};

namespace detail {

inline void escape_to(const std::string& s, std::string& out) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    static const char* hex = "0123456789abcdef";
                    out += "\\u00";
                    out += hex[(static_cast<unsigned char>(ch) >> 4) & 0xf];
                    out += hex[static_cast<unsigned char>(ch) & 0xf];
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

inline void dump_to(const JVal& v, std::string& out) {
    switch (v.kind) {
        case JVal::Kind::null_v: out += "null"; break;
        case JVal::Kind::bool_v: out += v.flag ? "true" : "false"; break;
        case JVal::Kind::num_v: out += v.token; break;
        case JVal::Kind::str_v: escape_to(v.text, out); break;
        case JVal::Kind::arr_v: {
            out += '[';
            for (std::size_t i = 0; i < v.items.size(); ++i) {
                if (i) out += ',';
                dump_to(v.items[i], out);
            }
            out += ']';
            break;
        }
        case JVal::Kind::obj_v: {
            out += '{';
            for (std::size_t i = 0; i < v.fields.size(); ++i) {
                if (i) out += ',';
                escape_to(v.fields[i].first, out);
                out += ':';
                dump_to(v.fields[i].second, out);
            }
            out += '}';
            break;
        }
    }
}

struct Reader {
    const std::string& s;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("json: " + what + " at byte " + std::to_string(i));
    }

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }

    char peek() {
        if (i >= s.size()) fail("unexpected end of input");
        return s[i];
    }

    void expect(char ch) {
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++i;
    }

    bool consume_word(const char* w) {
        std::size_t n = 0;
        while (w[n]) ++n;
        if (s.compare(i, n, w) != 0) return false;
        i += n;
        return true;
    }

    std::string read_string() {
        expect('"');
        std::string out;
        while (true) {
            if (i >= s.size()) fail("unterminated string");
            char ch = s[i++];
            if (ch == '"') return out;
            if (ch != '\\') {
                out += ch;
                continue;
            }
            if (i >= s.size()) fail("dangling escape");
            char esc = s[i++];
            switch (esc) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'u': {
                    if (i + 4 > s.size()) fail("short unicode escape");
                    unsigned code = 0;
                    for (int k = 0; k < 4; ++k) {
                        char h = s[i++];
                        code <<= 4;
                        if (h >= '0' && h <= '9') code |= static_cast<unsigned>(h - '0');
                        else if (h >= 'a' && h <= 'f') code |= static_cast<unsigned>(h - 'a' + 10);
                        else if (h >= 'A' && h <= 'F') code |= static_cast<unsigned>(h - 'A' + 10);
                        else fail("bad unicode escape digit");
                    }
                    if (code < 0x80) {
                        out += static_cast<char>(code);
                    } else if (code < 0x800) {
                        out += static_cast<char>(0xc0 | (code >> 6));
                        out += static_cast<char>(0x80 | (code & 0x3f));
                    } else {
                        out += static_cast<char>(0xe0 | (code >> 12));
                        out += static_cast<char>(0x80 | ((code >> 6) & 0x3f));
                        out += static_cast<char>(0x80 | (code & 0x3f));
                    }
                    break;
                }
                default: fail("unknown escape");
            }
        }
    }

    std::string read_number_token() {
        std::size_t start = i;
        if (peek() == '-') ++i;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("bad number");
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i < s.size() && s[i] == '.') {
            ++i;
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("bad fraction");
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
            ++i;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("bad exponent");
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
        return s.substr(start, i - start);
    }

    JVal read_value(int depth) {
        if (depth > 200) fail("nesting too deep");
        skip_ws();
        char ch = peek();
        if (ch == 'n') {
            if (!consume_word("null")) fail("bad literal");
            return JVal::null();
        }
        if (ch == 't') {
            if (!consume_word("true")) fail("bad literal");
            return JVal::boolean(true);
        }
        if (ch == 'f') {
            if (!consume_word("false")) fail("bad literal");
            return JVal::boolean(false);
        }
        if (ch == '"') return JVal::string(read_string());
        if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
            JVal v;
            v.kind = JVal::Kind::num_v;
            v.token = read_number_token();
            return v;
        }
        if (ch == '[') {
            ++i;
            auto v = JVal::array();
            skip_ws();
            if (peek() == ']') {
                ++i;
                return v;
            }
            while (true) {
                v.items.push_back(read_value(depth + 1));
                skip_ws();
                if (peek() == ',') {
                    ++i;
                    continue;
                }
                expect(']');
                return v;
            }
        }
        if (ch == '{') {
            ++i;
            auto v = JVal::object();
            skip_ws();
            if (peek() == '}') {
                ++i;
                return v;
            }
            while (true) {
                skip_ws();
                auto key = read_string();
                skip_ws();
                expect(':');
                v.fields.emplace_back(std::move(key), read_value(depth + 1));
                skip_ws();
                if (peek() == ',') {
                    ++i;
                    continue;
                }
                expect('}');
                return v;
            }
        }
        fail("unexpected character");
    }
};

} // namespace detail

inline std::string dump(const JVal& v) {
    std::string out;
    detail::dump_to(v, out);
    return out;
}

inline JVal parse(const std::string& s) {
    detail::Reader rd{s};
    auto v = rd.read_value(0);
    rd.skip_ws();
    if (rd.i != s.size()) rd.fail("trailing content");
    return v;
}

} // namespace afc::jio
