#include "ctinfo/baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace ctinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(const char* what, double v) {
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(what) + " must be positive, got " + std::to_string(v));
}

void require_unit_open(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile argument must lie in (0,1), got " + std::to_string(u));
}

}  // namespace

Baseline::Baseline(Family family, double p1, double p2) : family_(family), p1_(p1), p2_(p2) {
    switch (family_) {
        case Family::uniform:
            name_ = "uniform";
            support_ = {0.0, 1.0};
            break;
        case Family::exponential:
            require_positive("beta", p1_);
            name_ = "exp:beta=" + std::to_string(p1_);
            support_ = {0.0, kInf};
            break;
        case Family::pareto:
            require_positive("alpha", p1_);
            name_ = "pareto:alpha=" + std::to_string(p1_);
            support_ = {1.0, kInf};
            break;
        case Family::power:
            require_positive("b", p1_);
            require_positive("c", p2_);
            name_ = "power:b=" + std::to_string(p1_) + ",c=" + std::to_string(p2_);
            support_ = {0.0, p1_};
            break;
        case Family::weibull:
            require_positive("k", p1_);
            name_ = "weibull:k=" + std::to_string(p1_);
            support_ = {0.0, kInf};
            break;
    }
}

double Baseline::cdf(double x) const {
    if (x <= support_.lo) return 0.0;
    if (x >= support_.hi) return 1.0;
    switch (family_) {
        case Family::uniform:     return x;
        case Family::exponential: return -std::expm1(-p1_ * x);
        case Family::pareto:      return 1.0 - std::pow(x, -p1_);
        case Family::power:       return std::pow(x / p1_, p2_);
        case Family::weibull:     return -std::expm1(-std::pow(x, p1_));
    }
    return 0.0;
}

double Baseline::pdf(double x) const {
    if (x < support_.lo || x > support_.hi) return 0.0;
    switch (family_) {
        case Family::uniform:     return 1.0;
        case Family::exponential: return p1_ * std::exp(-p1_ * x);
        case Family::pareto:      return p1_ * std::pow(x, -p1_ - 1.0);
        case Family::power:       return p2_ * std::pow(x, p2_ - 1.0) / std::pow(p1_, p2_);
        case Family::weibull: {
            const double xk = std::pow(x, p1_);
            return p1_ * std::pow(x, p1_ - 1.0) * std::exp(-xk);
        }
    }
    return 0.0;
}

double Baseline::quantile(double u) const {
    if (u == 0.0) return support_.lo;
    if (u == 1.0) return support_.hi;
    require_unit_open(u);
    switch (family_) {
        case Family::uniform:     return u;
        case Family::exponential: return -std::log1p(-u) / p1_;
        case Family::pareto:      return std::pow(1.0 - u, -1.0 / p1_);
        case Family::power:       return p1_ * std::pow(u, 1.0 / p2_);
        case Family::weibull:     return std::pow(-std::log1p(-u), 1.0 / p1_);
    }
    return 0.0;
}

double Baseline::density_at_quantile(double u) const {
    require_unit_open(u);
    switch (family_) {
        case Family::uniform:     return 1.0;
        case Family::exponential: return p1_ * (1.0 - u);
        case Family::pareto:      return p1_ * std::pow(1.0 - u, 1.0 + 1.0 / p1_);
        case Family::power:       return (p2_ / p1_) * std::pow(u, (p2_ - 1.0) / p2_);
        case Family::weibull: {
            const double t = -std::log1p(-u);
            return p1_ * std::pow(t, (p1_ - 1.0) / p1_) * (1.0 - u);
        }
    }
    return 0.0;
}

Baseline make_uniform() { return Baseline(Family::uniform); }
Baseline make_exponential(double beta) { return Baseline(Family::exponential, beta); }
Baseline make_pareto(double alpha) { return Baseline(Family::pareto, alpha); }
Baseline make_power(double b, double c) { return Baseline(Family::power, b, c); }
Baseline make_weibull(double k) { return Baseline(Family::weibull, k); }

Baseline make_baseline(const std::string& name, const std::map<std::string, double>& params) {
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("family '" + name + "' requires parameter '" + key + "'");
        return it->second;
    };
    if (name == "uniform") return make_uniform();
    if (name == "exp" || name == "exponential") return make_exponential(get("beta"));
    if (name == "pareto") return make_pareto(get("alpha"));
    if (name == "power") return make_power(get("b"), get("c"));
    if (name == "weibull") return make_weibull(get("k"));
    throw std::invalid_argument("unknown baseline family '" + name + "'");
}

} // namespace ctinfo
