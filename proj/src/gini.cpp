#include "ctinfo/gini.hpp"

#include <cmath>
#include <stdexcept>

namespace ctinfo {

Estimate gmd(const Dist& d, const QuadratureSpec& spec) {
    auto integrand = [&](double u) {
        const double f = d.pdf(d.quantile(u));
        return f > 0.0 ? 2.0 * u * (1.0 - u) / f : 0.0;
    };
    return integrate_unit(integrand, spec);
}

void gmd_constants(const CTParams& p, double& A, double& B, double& C, double& D, double& E) {
    const double l1 = p.lambda1, l2 = p.lambda2;
    A = l1 * (1.0 - l1);
    B = l2 - l1;
    C = l2 * (1.0 - l2) - 2.0 * l1 * (l2 - l1);
    D = -((l2 - l1) * (l2 - l1) + 2.0 * l1 * (1.0 - l2));
    E = -2.0 * (1.0 - l2) * (l2 - l1);
}

GmdDecomposition gmd_ct_decomposed(const CTDistribution& ct, const QuadratureSpec& spec) {
    const Baseline& b = ct.baseline();
    if (b.family() == Family::pareto && b.param1() <= 1.0)
        throw std::domain_error("GMD undefined: pareto baseline with alpha <= 1 has infinite mean");

    GmdDecomposition out;
    gmd_constants(ct.params(), out.A, out.B, out.C, out.D, out.E);
    const double l1 = ct.params().lambda1, l2 = ct.params().lambda2;

    const Estimate direct = gmd(to_dist(ct), spec);
    const Estimate gf = gmd(to_dist(b), spec);
    const Estimate gmax = gmd(to_dist({OrderStat::max13, b}), spec);
    const Estimate rstar = integrate_unit(
        [&](double u) {
            const double poly = u * (out.A + u * (out.B + u * (out.C + u * (out.D + u * out.E))));
            return 2.0 * poly / b.density_at_quantile(u);
        },
        spec);

    out.total = direct.value;
    out.term_f = l1 * l1 * gf.value;
    out.term_fmax = (1.0 - l2) * (1.0 - l2) * gmax.value;
    out.r_star = rstar.value;
    out.converged = direct.converged && gf.converged && gmax.converged && rstar.converged;
    return out;
}

PowerGmd gmd_power_example(double b, double c, const CTParams& params) {
    if (!(b > 0.0 && c > 0.0)) throw std::invalid_argument("power baseline requires b, c > 0");
    double A, B, C, D, E;
    gmd_constants(params, A, B, C, D, E);
    const double l1 = params.lambda1, l2 = params.lambda2;
    PowerGmd out;
    out.term_f = 2.0 * b * c * l1 * l1 / ((c + 1.0) * (2.0 * c + 1.0));
    out.term_fmax = 2.0 * b * (1.0 - l2) * (1.0 - l2) *
                    (1.0 / (3.0 * c + 1.0) - 1.0 / (6.0 * c + 1.0));
    out.r_star = 2.0 * b * (A / (c + 1.0) + B / (2.0 * c + 1.0) + C / (3.0 * c + 1.0) +
                            D / (4.0 * c + 1.0) + E / (5.0 * c + 1.0));
    out.total = out.term_f + out.term_fmax + out.r_star;
    return out;
}

double rstar_quadratic(const Baseline& baseline, double lambda, const QuadratureSpec& spec) {
    const double first = 2.0 * lambda * lambda *
                         integrate_unit(
                             [&](double u) {
                                 return u * u * (1.0 - u * u) / baseline.density_at_quantile(u);
                             },
                             spec).value;
    const double second = integrate_unit(
        [&](double u) {
            return u * (1.0 - u) * (1.0 + 2.0 * u) / baseline.density_at_quantile(u);
        },
        spec).value;
    return first - 2.0 * lambda * (1.0 + lambda) * second;
}

Estimate energy_distance(const Dist& d1, const Dist& d2, const QuadratureSpec& spec) {
    auto integrand = [&](double u) {
        const double x = d1.quantile(u);
        const double f = d1.pdf(x);
        if (f <= 0.0) return 0.0;
        const double diff = u - d2.cdf(x);
        return diff * diff / f;
    };
    return integrate_unit(integrand, spec);
}

double ctg(const CTDistribution& ct, const QuadratureSpec& spec) {
    const CTParams& p = ct.params();
    if (ct.kind() == CTKind::cubic) {
        if (!(p.lambda1 >= 0.0 && p.lambda1 <= 1.0 && p.lambda2 >= -1.0 && p.lambda2 < 1.0))
            throw std::domain_error("CT GMD requires lambda1 in [0,1], lambda2 in [-1,1)");
    } else if (p.lambda2 == 1.0) {
        // the reductions evaluate the defining expression on the relaxed box;
        // only the degenerate quadratic weights are excluded
        throw std::domain_error("CT GMD undefined at lambda2 = 1");
    }
    const Baseline& b = ct.baseline();
    const double g_ct = gmd(to_dist(ct), spec).value;
    const double g_f = gmd(to_dist(b), spec).value;
    const double g_med = gmd(to_dist({OrderStat::med13, b}), spec).value;
    const double g_max = gmd(to_dist({OrderStat::max13, b}), spec).value;
    return g_ct - ct.weight_f() * g_f - ct.weight_med() * g_med - ct.weight_max() * g_max;
}

std::optional<CtgWeights> ctg_weights(const CTParams& params) {
    const double l1 = params.lambda1, l2 = params.lambda2;
    if (std::abs(1.0 - 2.0 * l1) < 1e-12) return std::nullopt;
    CtgWeights w;
    w.eta1 = (4.0 * l1 - 2.0 * l2 - 3.0 * l1 * l1) / (1.0 - 2.0 * l1);
    w.eta2 = ((26.0 * l2 - 20.0 * l1 - 6.0 * l2 * l2) - 3.0 * w.eta1 * (4.0 * l2 - 8.0)) /
             (9.0 * (2.0 * l2 - 3.0));
    return w;
}

std::optional<CtgWeights> ctg_weights_one_param(double lambda) {
    if (std::abs(1.0 + 2.0 * lambda) < 1e-12) return std::nullopt;
    CtgWeights w;
    w.eta1 = (3.0 * lambda * lambda + 2.0) / (1.0 + 2.0 * lambda);
    w.eta2 = ((34.0 * lambda + 6.0 * lambda * lambda) + 12.0 * w.eta1 * (1.0 + lambda)) /
             (9.0 * (1.0 + 2.0 * lambda));
    return w;
}

std::optional<double> ctg_via_energy(const CTDistribution& ct, const QuadratureSpec& spec) {
    const auto w = ct.kind() == CTKind::one_param_cubic ? ctg_weights_one_param(ct.kind_lambda())
                                                        : ctg_weights(ct.params());
    if (!w) return std::nullopt;
    const Baseline& b = ct.baseline();
    const Dist fct = to_dist(ct);
    const double cd_f = energy_distance(to_dist(b), fct, spec).value;
    const double cd_max = energy_distance(to_dist({OrderStat::max13, b}), fct, spec).value;
    const double cd_med = energy_distance(to_dist({OrderStat::med13, b}), fct, spec).value;
    return w->eta1 * cd_f + w->eta2 * cd_max + (1.0 - w->eta1 - w->eta2) * cd_med;
}

} // namespace ctinfo
