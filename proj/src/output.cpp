#include "ctinfo/output.hpp"

#include <cmath>
#include <cstdio>

namespace ctinfo {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json& Json::set(const std::string& key, Json v) {
    auto& obj = std::get<Object>(value_);
    obj.emplace_back(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    auto& arr = std::get<Array>(value_);
    arr.push_back(std::move(v));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out += "null";
    } else if (auto b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (auto i = std::get_if<long long>(&value_)) {
        out += std::to_string(*i);
    } else if (auto d = std::get_if<double>(&value_)) {
        out += std::isfinite(*d) ? fmt17(*d) : "null";
    } else if (auto s = std::get_if<std::string>(&value_)) {
        write_escaped(out, *s);
    } else if (auto obj = std::get_if<Object>(&value_)) {
        out += '{';
        bool first = true;
        for (const auto& [k, v] : *obj) {
            if (!first) out += ',';
            first = false;
            newline_indent(out, indent, depth + 1);
            write_escaped(out, k);
            out += indent > 0 ? ": " : ":";
            v.write(out, indent, depth + 1);
        }
        if (!obj->empty()) newline_indent(out, indent, depth);
        out += '}';
    } else if (auto arr = std::get_if<Array>(&value_)) {
        out += '[';
        bool first = true;
        for (const auto& v : *arr) {
            if (!first) out += ',';
            first = false;
            newline_indent(out, indent, depth + 1);
            v.write(out, indent, depth + 1);
        }
        if (!arr->empty()) newline_indent(out, indent, depth);
        out += ']';
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    return out;
}

} // namespace ctinfo
