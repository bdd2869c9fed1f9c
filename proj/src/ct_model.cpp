#include "ctinfo/ct_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "ctinfo/rng.hpp"

namespace ctinfo {

namespace {

double g_min_location(const CTParams& p) {
    // stationary point of g(u); only meaningful when lambda2 != 1
    return (p.lambda1 - p.lambda2) / (3.0 * (1.0 - p.lambda2));
}

}  // namespace

void CTParams::validate(bool strict) const {
    // the relaxed bounds admit the quadratic reduction (l1 = 1+lambda) and the
    // one-parameter reduction (l2 = 1-lambda), both of which leave the base box
    const double hi1 = strict ? 1.0 : 2.0;
    const double hi2 = strict ? 1.0 : 2.0;
    if (!(lambda1 >= 0.0 && lambda1 <= hi1))
        throw std::invalid_argument("lambda1=" + std::to_string(lambda1) + " outside [0," +
                                    (strict ? std::string("1]") : std::string("2]")));
    if (!(lambda2 >= -1.0 && lambda2 <= hi2))
        throw std::invalid_argument("lambda2=" + std::to_string(lambda2) + " outside [-1," +
                                    (strict ? std::string("1]") : std::string("2]")));
    auto check = [&](double u) {
        if (ctu_pdf(*this, u) < -1e-12)
            throw std::invalid_argument("invalid CT parameters: density polynomial negative at u=" +
                                        std::to_string(u));
    };
    check(0.0);
    check(1.0);
    if (lambda2 != 1.0) {
        const double us = g_min_location(*this);
        if (us > 0.0 && us < 1.0) check(us);
    }
}

bool CTParams::is_valid(bool strict) const {
    try {
        validate(strict);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

void MixingProbs::validate() const {
    for (double v : {pi1, pi2, pi3})
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("mixing probability outside [0,1]: " + std::to_string(v));
    if (std::abs(pi1 + pi2 + pi3 - 1.0) > 1e-12)
        throw std::invalid_argument("mixing probabilities must sum to 1");
}

CTDistribution::CTDistribution(Baseline baseline, CTParams params, CTKind kind, double kind_lambda)
    : baseline_(std::move(baseline)), params_(params), kind_(kind), kind_lambda_(kind_lambda) {
    params_.validate();
}

double CTDistribution::cdf(double x) const { return ctu_cdf(params_, baseline_.cdf(x)); }

double CTDistribution::pdf(double x) const {
    return baseline_.pdf(x) * ctu_pdf(params_, baseline_.cdf(x));
}

double CTDistribution::quantile(double u) const {
    if (u == 0.0) return baseline_.support().lo;
    if (u == 1.0) return baseline_.support().hi;
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile argument must lie in (0,1)");
    // invert the monotone cubic ctu_cdf by safeguarded Newton, then map
    // through the baseline quantile
    double lo = 0.0, hi = 1.0, t = u;
    for (int it = 0; it < 200; ++it) {
        const double c = ctu_cdf(params_, t) - u;
        if (c > 0.0) hi = t; else lo = t;
        const double d = ctu_pdf(params_, t);
        double step = d > 1e-14 ? t - c / d : 0.5 * (lo + hi);
        if (!(step > lo && step < hi)) step = 0.5 * (lo + hi);
        if (std::abs(step - t) < 1e-15) { t = step; break; }
        t = step;
    }
    return baseline_.quantile(t);
}

MixingProbs CTDistribution::mixing_probs() const {
    return {params_.lambda1 / 3.0, params_.lambda2 / 3.0,
            1.0 - (params_.lambda1 + params_.lambda2) / 3.0};
}

CTDistribution make_ct(const Baseline& baseline, const CTParams& params) {
    return CTDistribution(baseline, params, CTKind::cubic);
}

CTDistribution make_quadratic(const Baseline& baseline, double lambda) {
    if (!(std::abs(lambda) <= 1.0))
        throw std::invalid_argument("quadratic transmutation requires |lambda| <= 1");
    return CTDistribution(baseline, {1.0 + lambda, 1.0}, CTKind::quadratic, lambda);
}

CTDistribution make_one_param_cubic(const Baseline& baseline, double lambda) {
    if (!(std::abs(lambda) <= 1.0))
        throw std::invalid_argument("one-parameter cubic transmutation requires |lambda| <= 1");
    return CTDistribution(baseline, {1.0 + lambda, 1.0 - lambda}, CTKind::one_param_cubic, lambda);
}

double component_pdf(const OrderStatComponent& c, double x) {
    switch (c.which) {
        case OrderStat::beta21: return (x >= 0.0 && x <= 1.0) ? 2.0 * x : 0.0;
        case OrderStat::beta31: return (x >= 0.0 && x <= 1.0) ? 3.0 * x * x : 0.0;
        default: break;
    }
    const double f = c.baseline.pdf(x);
    const double F = c.baseline.cdf(x);
    switch (c.which) {
        case OrderStat::min13: return 3.0 * f * (1.0 - F) * (1.0 - F);
        case OrderStat::med13: return 6.0 * f * (F - F * F);
        case OrderStat::max13: return 3.0 * f * F * F;
        default: return 0.0;
    }
}

double component_cdf(const OrderStatComponent& c, double x) {
    switch (c.which) {
        case OrderStat::beta21: return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x * x);
        case OrderStat::beta31: return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x * x * x);
        default: break;
    }
    const double F = c.baseline.cdf(x);
    switch (c.which) {
        case OrderStat::min13: { const double s = 1.0 - F; return 1.0 - s * s * s; }
        case OrderStat::med13: return F * F * (3.0 - 2.0 * F);
        case OrderStat::max13: return F * F * F;
        default: return 0.0;
    }
}

double component_quantile(const OrderStatComponent& c, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile argument outside [0,1]");
    switch (c.which) {
        case OrderStat::beta21: return std::sqrt(u);
        case OrderStat::beta31: return std::cbrt(u);
        case OrderStat::min13: return c.baseline.quantile(1.0 - std::cbrt(1.0 - u));
        case OrderStat::max13: return c.baseline.quantile(std::cbrt(u));
        case OrderStat::med13: {
            // solve t^2 (3 - 2t) = u by bisection
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                (mid * mid * (3.0 - 2.0 * mid) < u ? lo : hi) = mid;
            }
            return c.baseline.quantile(0.5 * (lo + hi));
        }
    }
    return 0.0;
}

std::vector<double> sample_ct(const MixingProbs& mix, const Baseline& baseline,
                              std::size_t n, std::uint64_t seed) {
    mix.validate();
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
    auto rng = make_rng(seed);
    std::vector<double> out(n);
    const double t1 = mix.pi1;
    const double t2 = mix.pi1 + mix.pi2;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = u01(rng);
        double x1 = baseline.quantile(u01(rng));
        double x2 = baseline.quantile(u01(rng));
        double x3 = baseline.quantile(u01(rng));
        if (x1 > x2) std::swap(x1, x2);
        if (x2 > x3) std::swap(x2, x3);
        if (x1 > x2) std::swap(x1, x2);
        out[i] = v < t1 ? x1 : (v < t2 ? x2 : x3);
    }
    return out;
}

double mixture_cdf(const MixingProbs& mix, const Baseline& baseline, double x) {
    const double F = baseline.cdf(x);
    return 3.0 * mix.pi1 * F + 3.0 * (mix.pi2 - mix.pi1) * F * F +
           (1.0 - 3.0 * mix.pi2) * F * F * F;
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double F = cdf(sorted[i]);
        d = std::max(d, std::max((i + 1) / n - F, F - i / n));
    }
    return d;
}

} // namespace ctinfo
