#include "ctinfo/entropy.hpp"

#include <cmath>
#include <stdexcept>

#include "ctinfo/divergences.hpp"

namespace ctinfo {

namespace {

const double kLog3 = std::log(3.0);

double h_fW() { return 2.0 / 3.0 - kLog3; }  // entropy of Beta(3,1)

}  // namespace

Estimate shannon_entropy(const Dist& d, const QuadratureSpec& spec) {
    auto integrand = [&](double u) {
        const double f = d.pdf(d.quantile(u));
        return f > 0.0 ? -std::log(f) : 0.0;
    };
    return integrate_unit(integrand, spec);
}

Estimate weighted_entropy(const Dist& d, const std::function<double(double)>& weight,
                          const QuadratureSpec& spec) {
    auto integrand = [&](double u) {
        const double x = d.quantile(u);
        const double f = d.pdf(x);
        return f > 0.0 ? -weight(x) * std::log(f) : 0.0;
    };
    return integrate_unit(integrand, spec);
}

EntropyDecomposition ct_entropy_decomposed(const CTDistribution& ct, const QuadratureSpec& spec) {
    const CTParams& p = ct.params();
    const Baseline& b = ct.baseline();
    const Dist f = to_dist(b);
    const Dist fmax = to_dist({OrderStat::max13, b});

    EntropyDecomposition out;
    const Estimate direct = shannon_entropy(to_dist(ct), spec);
    const Estimate hf = shannon_entropy(f, spec);
    const Estimate hfmax = shannon_entropy(fmax, spec);
    const Estimate hFw = weighted_entropy(f, [&b](double x) { return b.cdf(x); }, spec);
    const Estimate h_uct = integrate_unit(
        [&p](double u) {
            const double g = ctu_pdf(p, u);
            return g > 0.0 ? -g * std::log(g) : 0.0;
        },
        spec);

    out.total = direct.value;
    out.term_lambda1_Hf = p.lambda1 * hf.value;
    out.term_Hfmax = (1.0 - p.lambda2) * hfmax.value;
    out.term_weighted = 2.0 * (p.lambda2 - p.lambda1) * hFw.value;
    out.term_HfW = -(1.0 - p.lambda2) * h_fW();
    out.term_HfUCT = h_uct.value;
    out.theta = out.term_HfUCT + out.term_HfW;
    out.converged = direct.converged && hf.converged && hfmax.converged && hFw.converged &&
                    h_uct.converged;
    return out;
}

std::optional<double> theta_closed_form(const CTParams& params) {
    if (params.lambda2 == 1.0) return std::nullopt;
    const DivergenceResult klb = kl_closed_form(KlForm::ct_to_uniform, params);
    if (klb.method != Method::closed_form) return std::nullopt;
    return -klb.value - (1.0 - params.lambda2) * h_fW();
}

double theta_quadrature(const CTParams& params, const QuadratureSpec& spec) {
    const double h_uct = integrate_unit(
        [&params](double u) {
            const double g = ctu_pdf(params, u);
            return g > 0.0 ? -g * std::log(g) : 0.0;
        },
        spec).value;
    return h_uct - (1.0 - params.lambda2) * h_fW();
}

namespace {

void require_cts_range(const CTParams& p) {
    if (!(p.lambda1 >= 0.0 && p.lambda1 <= 1.0 && p.lambda2 >= -1.0 && p.lambda2 < 1.0))
        throw std::domain_error("CT Shannon entropy requires lambda1 in [0,1], lambda2 in [-1,1)");
}

// the quadratic/one-parameter reductions leave the definition box for every
// nonzero reduction parameter; they evaluate the defining expression on the
// relaxed box (only the degenerate quadratic weights are excluded)
void require_cts_range(const CTDistribution& ct) {
    if (ct.kind() == CTKind::cubic)
        require_cts_range(ct.params());
    else if (ct.params().lambda2 == 1.0)
        throw std::domain_error("CT Shannon entropy undefined at lambda2 = 1");
}

}  // namespace

double cts_definition(const CTDistribution& ct, const QuadratureSpec& spec) {
    require_cts_range(ct);
    const Baseline& b = ct.baseline();
    const double h_ct = shannon_entropy(to_dist(ct), spec).value;
    const double h_f = shannon_entropy(to_dist(b), spec).value;
    const double h_med = shannon_entropy(to_dist({OrderStat::med13, b}), spec).value;
    const double h_max = shannon_entropy(to_dist({OrderStat::max13, b}), spec).value;
    return h_ct - ct.weight_f() * h_f - ct.weight_med() * h_med - ct.weight_max() * h_max;
}

double cts_via_kl(const CTDistribution& ct, const QuadratureSpec& spec) {
    require_cts_range(ct);
    const CTParams& p = ct.params();
    const Baseline& b = ct.baseline();
    const Dist f = to_dist(b);
    const Dist fct = to_dist(ct);
    const Dist fmed = to_dist({OrderStat::med13, b});
    const Dist fmax = to_dist({OrderStat::max13, b});
    const double d = p.lambda2 - p.lambda1;
    return (1.0 - p.lambda2) * kl(fmax, f, spec).value + (d / 3.0) * kl(fmed, fmax, spec).value -
           kl(fct, f, spec).value + (kLog3 - 1.0) * d;
}

double cts_closed_form(const CTParams& p, const QuadratureSpec& spec) {
    require_cts_range(p);
    const double d = p.lambda2 - p.lambda1;
    const double kl_b = kl_closed_form(KlForm::ct_to_uniform, p, spec).value;
    return (1.0 - p.lambda2) * (kLog3 - 2.0 / 3.0) + (d / 3.0) * std::log(2.0) - kl_b +
           (kLog3 - 1.0) * d;
}

QuadraticEntropyIdentity entropy_special_cases(double lambda, const Baseline& baseline,
                                               const QuadratureSpec& spec) {
    const Dist f = to_dist(baseline);
    const CTDistribution qt = make_quadratic(baseline, lambda);

    // pair max: density 2 f F, u-space density 2u over the baseline quantile
    auto pairmax_entropy = [&]() {
        auto integrand = [&](double t) {
            const double x = baseline.quantile(std::sqrt(t));  // t = u^2, draw from Beta(2,1)
            const double val = 2.0 * baseline.cdf(x) * baseline.pdf(x);
            return val > 0.0 ? -std::log(val) : 0.0;
        };
        return integrate_unit(integrand, spec).value;
    };

    QuadraticEntropyIdentity out{};
    out.h_direct = shannon_entropy(to_dist(qt), spec).value;
    const double h_f = shannon_entropy(f, spec).value;
    const double h_max2 = pairmax_entropy();
    out.h_fV = 0.5 - std::log(2.0);
    const double h_ut = integrate_unit(
        [lambda](double u) {
            const double g = (1.0 + lambda) - 2.0 * lambda * u;
            return g > 0.0 ? -g * std::log(g) : 0.0;
        },
        spec).value;
    out.h_decomposed = (1.0 + lambda) * h_f - lambda * h_max2 + lambda * out.h_fV + h_ut;

    const double hF = weighted_entropy(f, [&baseline](double x) { return baseline.cdf(x); },
                                       spec).value;
    out.weighted_lhs = -2.0 * lambda * hF;
    out.weighted_rhs = -lambda * h_max2 + lambda * out.h_fV;
    return out;
}

} // namespace ctinfo
