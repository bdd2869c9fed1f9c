#include "ctinfo/distspec.hpp"

#include <cstdlib>
#include <map>

namespace ctinfo {

namespace {

// parses "k1=v1,k2=v2" starting at base_pos (for error reporting)
std::map<std::string, double> parse_kvlist(const std::string& s, std::size_t base_pos) {
    std::map<std::string, double> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const std::size_t eq = s.find('=', i);
        if (eq == std::string::npos)
            throw DistSpecError("expected '=' in parameter list", base_pos + i);
        const std::string key = s.substr(i, eq - i);
        if (key.empty()) throw DistSpecError("empty parameter name", base_pos + i);
        std::size_t end = s.find(',', eq + 1);
        if (end == std::string::npos) end = s.size();
        const std::string val = s.substr(eq + 1, end - eq - 1);
        char* stop = nullptr;
        const double v = std::strtod(val.c_str(), &stop);
        if (val.empty() || stop != val.c_str() + val.size())
            throw DistSpecError("bad numeric value '" + val + "'", base_pos + eq + 1);
        out[key] = v;
        i = end + (end < s.size() ? 1 : 0);
    }
    return out;
}

Baseline parse_baseline(const std::string& s, std::size_t base_pos) {
    const std::size_t colon = s.find(':');
    const std::string name = s.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos)
        params = parse_kvlist(s.substr(colon + 1), base_pos + colon + 1);
    try {
        return make_baseline(name, params);
    } catch (const std::invalid_argument& e) {
        throw DistSpecError(e.what(), base_pos);
    }
}

double require(const std::map<std::string, double>& kv, const char* key, std::size_t pos) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw DistSpecError(std::string("missing parameter '") + key + "'", pos);
    return it->second;
}

}  // namespace

ParsedDist parse_dist(const std::string& spec) {
    if (spec.empty()) throw DistSpecError("empty distribution spec", 0);
    ParsedDist out;

    if (spec == "beta21" || spec == "beta31") {
        out.component = OrderStatComponent{
            spec == "beta21" ? OrderStat::beta21 : OrderStat::beta31, make_uniform()};
        out.dist = to_dist(*out.component);
        out.canonical = spec;
        return out;
    }

    const std::size_t at = spec.find('@');
    const std::string head = spec.substr(0, at);
    const std::size_t colon = head.find(':');
    const std::string verb = head.substr(0, colon);

    if (verb == "ct" || verb == "ct1" || verb == "qt" || verb == "os13") {
        if (at == std::string::npos)
            throw DistSpecError("'" + verb + "' spec requires '@<baseline>'", head.size());
        if (colon == std::string::npos)
            throw DistSpecError("'" + verb + "' spec requires ':' arguments", verb.size());
        const std::string args = head.substr(colon + 1);
        const Baseline base = parse_baseline(spec.substr(at + 1), at + 1);
        out.baseline = base;
        if (verb == "os13") {
            OrderStat which;
            if (args == "min") which = OrderStat::min13;
            else if (args == "med") which = OrderStat::med13;
            else if (args == "max") which = OrderStat::max13;
            else throw DistSpecError("os13 selector must be min|med|max", colon + 1);
            out.component = OrderStatComponent{which, base};
            out.dist = to_dist(*out.component);
            out.canonical = "os13:" + args + "@" + base.name();
            return out;
        }
        const auto kv = parse_kvlist(args, colon + 1);
        try {
            if (verb == "ct") {
                const CTParams p{require(kv, "l1", colon + 1), require(kv, "l2", colon + 1)};
                out.ct = make_ct(base, p);
            } else if (verb == "ct1") {
                out.ct = make_one_param_cubic(base, require(kv, "l", colon + 1));
            } else {
                out.ct = make_quadratic(base, require(kv, "l", colon + 1));
            }
        } catch (const std::invalid_argument& e) {
            throw DistSpecError(e.what(), colon + 1);
        }
        out.dist = to_dist(*out.ct);
        out.canonical = head + "@" + base.name();
        return out;
    }

    if (at != std::string::npos)
        throw DistSpecError("unexpected '@' in baseline spec", at);
    const Baseline base = parse_baseline(spec, 0);
    out.baseline = base;
    out.dist = to_dist(base);
    out.canonical = base.name();
    return out;
}

} // namespace ctinfo
