#include "ctinfo/divergences.hpp"

#include <cmath>

namespace ctinfo {

namespace {

constexpr double kPi = 3.141592653589793238462643;

double clip_tiny_negative(double v) {
    return (v < 0.0 && v > -1e-10) ? 0.0 : v;
}

DivergenceResult from_estimate(const Estimate& e) {
    DivergenceResult out;
    out.value = std::isfinite(e.value) ? clip_tiny_negative(e.value)
                                       : std::numeric_limits<double>::infinity();
    out.method = Method::quadrature;
    out.error_bound = e.error_bound;
    return out;
}

double safe_log_ratio(double num, double den) {
    if (num <= 0.0) return 0.0;  // 0 log 0 convention
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log(num / den);
}

// u-space densities of the CT-uniform component family
double g_of(const CTParams& p, double u) { return ctu_pdf(p, u); }
double med_pdf(double u) { return 6.0 * (u - u * u); }
double max_pdf(double u) { return 3.0 * u * u; }

}  // namespace

DivergenceResult kl(const Dist& f1, const Dist& f2, const QuadratureSpec& spec) {
    auto integrand = [&](double u) {
        const double x = f1.quantile(u);
        return safe_log_ratio(f1.pdf(x), f2.pdf(x));
    };
    return from_estimate(integrate_unit(integrand, spec));
}

DivergenceResult kl_x_space(const Dist& f1, const Dist& f2, const Baseline& baseline,
                            const QuadratureSpec& spec) {
    auto fn = [&](double x) {
        const double a = f1.pdf(x);
        if (a <= 0.0) return 0.0;
        return a * safe_log_ratio(a, f2.pdf(x));
    };
    return from_estimate(integrate_support(fn, baseline, spec));
}

DivergenceResult jeffreys(const Dist& f1, const Dist& f2, const QuadratureSpec& spec) {
    const DivergenceResult a = kl(f1, f2, spec);
    const DivergenceResult b = kl(f2, f1, spec);
    return {a.value + b.value, Method::quadrature, a.error_bound + b.error_bound};
}

DivergenceResult chi_square(const Dist& f1, const Dist& f2, const QuadratureSpec& spec) {
    auto integrand = [&](double u) {
        const double x = f2.quantile(u);
        const double den = f2.pdf(x);
        if (den <= 0.0) return std::numeric_limits<double>::infinity();
        const double t = f1.pdf(x) / den - 1.0;
        return t * t;
    };
    return from_estimate(integrate_unit(integrand, spec));
}

DivergenceResult symmetric_chi_square(const Dist& f1, const Dist& f2,
                                      const QuadratureSpec& spec) {
    const DivergenceResult a = chi_square(f1, f2, spec);
    const DivergenceResult b = chi_square(f2, f1, spec);
    return {a.value + b.value, Method::quadrature, a.error_bound + b.error_bound};
}

DivergenceResult kl_form_quadrature(KlForm form, const CTParams& p, const QuadratureSpec& spec) {
    std::function<double(double)> integrand;
    switch (form) {
        case KlForm::uniform_to_ct:
            integrand = [p](double u) { return -std::log(g_of(p, u)); };
            break;
        case KlForm::ct_to_uniform:
            integrand = [p](double u) { const double g = g_of(p, u);
                return g > 0.0 ? g * std::log(g) : 0.0; };
            break;
        case KlForm::med_to_ct:
            integrand = [p](double u) { return med_pdf(u) * safe_log_ratio(med_pdf(u), g_of(p, u)); };
            break;
        case KlForm::ct_to_max:
            integrand = [p](double u) { const double g = g_of(p, u);
                return g > 0.0 ? g * std::log(g / max_pdf(u)) : 0.0; };
            break;
        case KlForm::max_to_ct:
            integrand = [p](double u) { return max_pdf(u) * safe_log_ratio(max_pdf(u), g_of(p, u)); };
            break;
        case KlForm::med_to_max:
            integrand = [](double u) { return med_pdf(u) * std::log(med_pdf(u) / max_pdf(u)); };
            break;
        case KlForm::max_to_uniform:
            integrand = [](double u) { return max_pdf(u) * std::log(max_pdf(u)); };
            break;
    }
    return from_estimate(integrate_unit(integrand, spec));
}

DivergenceResult kl_closed_form(KlForm form, const CTParams& p, const QuadratureSpec& spec) {
    const double l1 = p.lambda1, l2 = p.lambda2;
    if (form == KlForm::med_to_max) return {std::log(2.0), Method::closed_form, 0.0};
    if (form == KlForm::max_to_uniform)
        return {std::log(3.0) - 2.0 / 3.0, Method::closed_form, 0.0};

    const auto roots = CtuRoots::make(p);
    auto fallback = [&] { return kl_form_quadrature(form, p, spec); };
    if (!roots || std::abs(roots->r) < 1e-7) return fallback();
    const cplx r = roots->r, rp = roots->p, rq = roots->q;
    const double om = 1.0 - l2;

    cplx v(0.0, 0.0);
    switch (form) {
        case KlForm::uniform_to_ct: {
            const std::vector<double> varphi = {0.0, l2 - l1, 3.0 * om};
            v = 2.0 - std::log(3.0 - l1 - l2)
                - (log_ratio_term(varphi, rp) - log_ratio_term(varphi, rq)) / r;
            break;
        }
        case KlForm::ct_to_uniform: {
            const std::vector<double> phi = {0.0, 0.0, 2.0 * (l2 - l1) * (l2 - l1),
                                             10.0 * (l2 - l1) * om, 12.0 * om * om};
            v = std::log(3.0 - l1 - l2) - (2.0 / 3.0) * (3.0 + l1 - 4.0 * l2)
                + 2.0 * (l1 * l1 + 13.0 * l2 * l2 - 2.0 * l1 * l2 - 18.0 * l2 + 6.0) / (9.0 * om)
                - (log_ratio_term(phi, rp) - log_ratio_term(phi, rq)) / (2.0 * r);
            break;
        }
        case KlForm::med_to_ct: {
            // partial-fraction form, log(6/(3-l1-l2)) - 5/3 + int (3b u^2
            // + (6a-2b) u^3 - 4a u^4)/g du with a = 3(1-l2), b = 2(l2-l1); the
            // reference form for this divergence is in the erratum report
            const double a = 3.0 * om, b = 2.0 * (l2 - l1);
            const auto tail = integral_poly_over_g({0.0, 0.0, 3.0 * b, 6.0 * a - 2.0 * b, -4.0 * a}, p);
            if (!tail) return fallback();
            v = std::log(6.0 / (3.0 - l1 - l2)) - 5.0 / 3.0 + *tail;
            break;
        }
        case KlForm::ct_to_max: {
            const std::vector<double> phi = {0.0, 0.0, 2.0 * (l2 - l1) * (l2 - l1),
                                             10.0 * (l2 - l1) * om, 12.0 * om * om};
            v = -std::log(3.0 / (3.0 - l1 - l2)) + (l1 + 9.0 * l2 - 4.0) / 3.0
                + 2.0 * (l1 * l1 + 13.0 * l2 * l2 - 2.0 * l1 * l2 - 18.0 * l2 + 6.0) / (9.0 * om)
                - (log_ratio_term(phi, rp) - log_ratio_term(phi, rq)) / (2.0 * r);
            break;
        }
        case KlForm::max_to_ct: {
            const std::vector<double> gam = {0.0, 0.0, 0.0, 2.0 * (l2 - l1), 6.0 * om};
            v = std::log(3.0 / (3.0 - l1 - l2)) - 2.0 / 3.0
                + (l2 - l1) * (3.0 - 7.0 * l2 + 4.0 * l1) / (9.0 * om * om)
                + 2.0 * (4.0 * l1 * l1 + 10.0 * l2 * l2 - 8.0 * l1 * l2 - 9.0 * l2 + 3.0)
                      / (9.0 * om * om)
                + (log_ratio_term(gam, rq) - log_ratio_term(gam, rp)) / (2.0 * r);
            break;
        }
        default: return fallback();
    }
    if (!std::isfinite(v.real()) || std::abs(v.imag()) > 1e-9) return fallback();
    return {clip_tiny_negative(v.real()), Method::closed_form, 0.0};
}

std::pair<double, double> kl_reduction_check(KlPair pair, const Baseline& baseline,
                                             const CTParams& params, const QuadratureSpec& spec) {
    const CTDistribution ct = make_ct(baseline, params);
    const Dist f = to_dist(baseline);
    const Dist fct = to_dist(ct);
    const Dist fmed = to_dist({OrderStat::med13, baseline});
    const Dist fmax = to_dist({OrderStat::max13, baseline});

    const Dist* lhs = nullptr;
    const Dist* rhs = nullptr;
    std::optional<KlForm> uform;
    switch (pair) {
        case KlPair::f_vs_ct:    lhs = &f;    rhs = &fct;  uform = KlForm::uniform_to_ct; break;
        case KlPair::ct_vs_f:    lhs = &fct;  rhs = &f;    uform = KlForm::ct_to_uniform; break;
        case KlPair::med_vs_ct:  lhs = &fmed; rhs = &fct;  uform = KlForm::med_to_ct; break;
        case KlPair::med_vs_max: lhs = &fmed; rhs = &fmax; uform = KlForm::med_to_max; break;
        case KlPair::ct_vs_max:  lhs = &fct;  rhs = &fmax; uform = KlForm::ct_to_max; break;
        case KlPair::max_vs_ct:  lhs = &fmax; rhs = &fct;  uform = KlForm::max_to_ct; break;
        case KlPair::max_vs_f:   lhs = &fmax; rhs = &f;    uform = KlForm::max_to_uniform; break;
    }
    const double x_route = kl_x_space(*lhs, *rhs, baseline, spec).value;
    const double u_route = kl_form_quadrature(*uform, params, spec).value;
    return {x_route, u_route};
}

DivergenceResult kl_mixture_ct(double v, const CTParams& p, MixDirection direction,
                               const QuadratureSpec& spec) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("mixture weight v must lie in [0,1]");
    const double l1 = p.lambda1, l2 = p.lambda2;
    const double om = 1.0 - l2;

    auto quad = [&]() -> DivergenceResult {
        auto gmix = [v](double u) { return v + 3.0 * (1.0 - v) * u * u; };
        auto integrand = [&](double u) {
            const double a = direction == MixDirection::mix_to_ct ? gmix(u) : g_of(p, u);
            const double b = direction == MixDirection::mix_to_ct ? g_of(p, u) : gmix(u);
            return a > 0.0 ? a * safe_log_ratio(a, b) : 0.0;
        };
        return from_estimate(integrate_unit(integrand, spec));
    };

    // endpoint reductions: v=1 makes the mixture the baseline itself, v=0 the
    // triple max
    if (v == 1.0)
        return kl_closed_form(direction == MixDirection::mix_to_ct ? KlForm::uniform_to_ct
                                                                   : KlForm::ct_to_uniform,
                              p, spec);
    if (v == 0.0)
        return kl_closed_form(direction == MixDirection::mix_to_ct ? KlForm::max_to_ct
                                                                   : KlForm::ct_to_max,
                              p, spec);

    const auto roots = CtuRoots::make(p);
    if (!roots || std::abs(roots->r) < 1e-7) return quad();
    const cplx r = roots->r, rp = roots->p, rq = roots->q;
    const double atn = std::atan(std::sqrt(3.0 * (1.0 - v) / v));

    cplx val(0.0, 0.0);
    if (direction == MixDirection::mix_to_ct) {
        const std::vector<double> xi = {0.0, 2.0 * v * (l2 - l1), 6.0 * v * om,
                                        2.0 * (l2 - l1) * (1.0 - v), 6.0 * (1.0 - v) * om};
        const double at_term = 4.0 * std::pow(v, 1.5) / (3.0 * std::sqrt(3.0) * std::sqrt(1.0 - v)) * atn;
        val = std::log((3.0 - 2.0 * v) / (3.0 - l1 - l2))
              + (1.0 - v) * (4.0 * l1 * l1 + 13.0 * l2 * l2 - 5.0 * l1 * l2 - 3.0 * l1 -
                             15.0 * l2 + 6.0) / (9.0 * om * om)
              + at_term - (2.0 / 3.0) * (1.0 - 2.0 * v)
              - (log_ratio_term(xi, rp) - log_ratio_term(xi, rq)) / (2.0 * r);
    } else {
        // corrected constant term: the reference -(1/3)(4+5 l1-9 l2) omits 2 l1
        // (see erratum report)
        const std::vector<double> phi = {0.0, 0.0, 2.0 * (l2 - l1) * (l2 - l1),
                                         10.0 * (l2 - l1) * om, 12.0 * om * om};
        val = std::log((3.0 - l1 - l2) / (3.0 - 2.0 * v))
              - (4.0 - l1 - 9.0 * l2) / 3.0
              - (log_ratio_term(phi, rp) - log_ratio_term(phi, rq)) / (2.0 * r)
              - v / (3.0 * (1.0 - v)) *
                    (2.0 * om - (l2 - l1) * std::log(v / (3.0 - 2.0 * v)))
              - 2.0 * (l1 - v * om / (3.0 * (1.0 - v))) * std::sqrt(v / (3.0 * (1.0 - v))) * atn
              + 2.0 * (l1 * l1 + 13.0 * l2 * l2 - 2.0 * l1 * l2 - 18.0 * l2 + 6.0) / (9.0 * om);
    }
    if (!std::isfinite(val.real()) || std::abs(val.imag()) > 1e-9) return quad();
    return {clip_tiny_negative(val.real()), Method::closed_form, 0.0};
}

DivergenceResult chi_form_quadrature(ChiForm form, const CTParams& p, const QuadratureSpec& spec) {
    std::function<double(double)> integrand;
    switch (form) {
        case ChiForm::ct_to_uniform:
            integrand = [p](double u) { const double d = g_of(p, u) - 1.0; return d * d; };
            break;
        case ChiForm::uniform_to_ct:
            integrand = [p](double u) {
                const double g = g_of(p, u);
                if (g <= 0.0) return std::numeric_limits<double>::infinity();
                const double d = 1.0 - g;
                return d * d / g;
            };
            break;
        case ChiForm::max_to_ct:
            integrand = [p](double u) {
                const double g = g_of(p, u);
                if (g <= 0.0) return std::numeric_limits<double>::infinity();
                const double d = max_pdf(u) - g;
                return d * d / g;
            };
            break;
    }
    return from_estimate(integrate_unit(integrand, spec));
}

DivergenceResult chi_square_closed_form(ChiForm form, const CTParams& p,
                                        const QuadratureSpec& spec) {
    const double l1 = p.lambda1, l2 = p.lambda2;
    if (form == ChiForm::ct_to_uniform) {
        const double v = (12.0 - 15.0 * l1 - 9.0 * l2 + 5.0 * l1 * l2 + 5.0 * l1 * l1 +
                          2.0 * l2 * l2) / 15.0;
        return {clip_tiny_negative(v), Method::closed_form, 0.0};
    }
    auto fallback = [&] { return chi_form_quadrature(form, p, spec); };
    const auto roots = CtuRoots::make(p);
    if (!roots) return fallback();
    if (form == ChiForm::uniform_to_ct) {
        if (l1 <= 0.0)  // f_UCT vanishes at 0: divergent
            return {std::numeric_limits<double>::infinity(), Method::closed_form, 0.0};
        const auto t = atanh_over_r(roots->r_squared, l2);
        if (!t) return fallback();
        return {clip_tiny_negative(-1.0 + *t), Method::closed_form, 0.0};
    }
    // (c) chi2(f_W, f_UCT)
    if (std::abs(roots->r) < 1e-7) return fallback();
    const double om = 1.0 - l2;
    const cplx sigma = (log_ratio_term({0, 0, 0, 0, 1}, roots->p) -
                        log_ratio_term({0, 0, 0, 0, 1}, roots->q)) / (2.0 * roots->r);
    const cplx v = -1.0 +
                   (4.0 * l1 * l1 + 10.0 * l2 * l2 - 8.0 * l1 * l2 - 9.0 * l2 + 3.0) /
                       (3.0 * om * om * om) -
                   9.0 * sigma;
    if (!std::isfinite(v.real()) || std::abs(v.imag()) > 1e-9) return fallback();
    return {clip_tiny_negative(v.real()), Method::closed_form, 0.0};
}

} // namespace ctinfo
