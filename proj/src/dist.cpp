#include "ctinfo/dist.hpp"

#include <cmath>

namespace ctinfo {

Dist to_dist(const Baseline& b) {
    return {b.name(),
            [b](double x) { return b.pdf(x); },
            [b](double x) { return b.cdf(x); },
            [b](double u) { return b.quantile(u); },
            b.support()};
}

Dist to_dist(const CTDistribution& ct) {
    return {"ct@" + ct.baseline().name(),
            [ct](double x) { return ct.pdf(x); },
            [ct](double x) { return ct.cdf(x); },
            [ct](double u) { return ct.quantile(u); },
            ct.support()};
}

Dist to_dist(const OrderStatComponent& c) {
    std::string tag;
    switch (c.which) {
        case OrderStat::min13: tag = "os13:min@" + c.baseline.name(); break;
        case OrderStat::med13: tag = "os13:med@" + c.baseline.name(); break;
        case OrderStat::max13: tag = "os13:max@" + c.baseline.name(); break;
        case OrderStat::beta21: tag = "beta21"; break;
        case OrderStat::beta31: tag = "beta31"; break;
    }
    const Support sup = (c.which == OrderStat::beta21 || c.which == OrderStat::beta31)
                            ? Support{0.0, 1.0}
                            : c.baseline.support();
    return {tag,
            [c](double x) { return component_pdf(c, x); },
            [c](double x) { return component_cdf(c, x); },
            [c](double u) { return component_quantile(c, u); },
            sup};
}

Dist unit_uniform_dist() { return to_dist(make_uniform()); }

Dist beta21_dist() { return to_dist({OrderStat::beta21, make_uniform()}); }

Dist beta31_dist() { return to_dist({OrderStat::beta31, make_uniform()}); }

Dist ctu_dist(const CTParams& params) { return to_dist(make_ct(make_uniform(), params)); }

Dist mixture_f_fmax_dist(const Baseline& b, double v) {
    auto cdf = [b, v](double x) {
        const double F = b.cdf(x);
        return v * F + (1.0 - v) * F * F * F;
    };
    return {"mix:v=" + std::to_string(v) + "@" + b.name(),
            [b, v](double x) {
                const double F = b.cdf(x);
                return b.pdf(x) * (v + 3.0 * (1.0 - v) * F * F);
            },
            cdf,
            [b, v, cdf](double u) {
                if (u == 0.0) return b.support().lo;
                if (u == 1.0) return b.support().hi;
                double lo = 0.0, hi = 1.0;  // solve in F-space, then map
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (v * mid + (1.0 - v) * mid * mid * mid < u ? lo : hi) = mid;
                }
                return b.quantile(0.5 * (lo + hi));
            },
            b.support()};
}

} // namespace ctinfo
