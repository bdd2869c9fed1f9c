#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ctinfo {

/// Formats a double with 17 significant digits (the CLI float contract).
std::string fmt17(double v);

/// Minimal ordered JSON value for CLI output. nlohmann/json is used for
/// parsing; output goes through this writer so every float is serialized
/// with fmt17. Non-finite doubles are emitted as null.
class Json {
public:
    Json() : value_(nullptr) {}
    Json(bool b) : value_(b) {}
    Json(double d) : value_(d) {}
    Json(int i) : value_(static_cast<long long>(i)) {}
    Json(long long i) : value_(i) {}
    Json(std::size_t i) : value_(static_cast<long long>(i)) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}

    static Json object() { Json j; j.value_ = Object{}; return j; }
    static Json array() { Json j; j.value_ = Array{}; return j; }

    Json& set(const std::string& key, Json v);
    Json& push(Json v);

    std::string dump(int indent = 0) const;

private:
    using Object = std::vector<std::pair<std::string, Json>>;
    using Array = std::vector<Json>;
    std::variant<std::nullptr_t, bool, long long, double, std::string, Object, Array> value_;

    void write(std::string& out, int indent, int depth) const;
};

} // namespace ctinfo
