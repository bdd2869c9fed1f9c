#include "ctinfo/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ctinfo/ctu_algebra.hpp"

namespace ctinfo {

namespace {

double score1(double u) { return 1.0 - 2.0 * u; }            // d g / d lambda1, over g
double score2(double u) { return 2.0 * u - 3.0 * u * u; }    // d g / d lambda2, over g

}  // namespace

FisherMatrix fisher_matrix(const CTParams& params, const QuadratureSpec& spec) {
    FisherMatrix out;
    out.method = FisherMethod::quadrature;
    auto entry = [&](auto num) {
        return integrate_unit(
                   [&](double u) {
                       const double g = ctu_pdf(params, u);
                       if (g <= 0.0) return std::numeric_limits<double>::infinity();
                       return num(u) / g;
                   },
                   spec)
            .value;
    };
    out.i11 = entry([](double u) { return score1(u) * score1(u); });
    out.i12 = entry([](double u) { return score1(u) * score2(u); });
    out.i22 = entry([](double u) { return score2(u) * score2(u); });
    return out;
}

FisherMatrix fisher_matrix(const CTDistribution& ct, const QuadratureSpec& spec) {
    return fisher_matrix(ct.params(), spec);
}

std::optional<FisherMatrix> fisher_ct_uniform_closed(const CTParams& params) {
    const auto roots = CtuRoots::make(params);
    if (!roots || std::abs(roots->r) < 1e-7) return std::nullopt;
    const double l1 = params.lambda1, l2 = params.lambda2;
    const double om = 1.0 - l2;
    const auto t = atanh_over_r(roots->r_squared, l2);
    if (!t) return std::nullopt;

    auto omega = [&](const std::vector<double>& poly, double scale) -> std::optional<double> {
        const cplx v = (log_ratio_term(poly, roots->p) - log_ratio_term(poly, roots->q)) *
                       scale / roots->r;
        if (!std::isfinite(v.real()) || std::abs(v.imag()) > 1e-9) return std::nullopt;
        return v.real();
    };
    const auto w1 = omega({0.0, 1.0, -1.0}, 2.0);
    const auto w2 = omega({0.0, 2.0, -7.0, 6.0}, 0.5);
    const auto w3 = omega({0.0, 0.0, 4.0, -12.0, 9.0}, 0.5);
    if (!w1 || !w2 || !w3) return std::nullopt;

    FisherMatrix out;
    out.method = FisherMethod::closed_form;
    out.i11 = *t + *w1 + 4.0 / (3.0 * om);
    out.i12 = -*w2 - 4.0 * (1.0 - l1) / (3.0 * om * om);
    out.i22 = (4.0 * l1 * l1 - 8.0 * l1 + 3.0 * l2 + 1.0) / (3.0 * om * om * om) - *w3;
    if (!std::isfinite(out.i11) || !std::isfinite(out.i12) || !std::isfinite(out.i22))
        return std::nullopt;
    return out;
}

OneParamFisher fisher_one_param(double lambda, const QuadratureSpec& spec) {
    if (!(std::abs(lambda) <= 1.0))
        throw std::invalid_argument("one-parameter CT requires |lambda| <= 1");
    OneParamFisher out;
    auto h = [lambda](double u) { return (1.0 + lambda) - 4.0 * lambda * u + 3.0 * lambda * u * u; };
    auto s = [](double u) { return 1.0 - 4.0 * u + 3.0 * u * u; };

    out.direct = integrate_unit([&](double u) { const double sv = s(u); return sv * sv / h(u); },
                                spec).value;

    if (std::abs(lambda) < 1e-3) {
        // continuous extension: I(0) = int s^2 = 2/15; nearby values by
        // quadrature (the closed form divides by the vanishing leading
        // coefficient)
        out.value = lambda == 0.0 ? 2.0 / 15.0 : out.direct;
        out.identity = out.value;
        out.method = lambda == 0.0 ? Method::closed_form : Method::quadrature;
        return out;
    }

    const auto closed = integral_poly_over_quadratic({1.0, -8.0, 22.0, -24.0, 9.0},
                                                     3.0 * lambda, -4.0 * lambda, 1.0 + lambda);
    if (closed) {
        out.value = *closed;
        out.method = Method::closed_form;
    } else {
        out.value = out.direct;
        out.method = Method::quadrature;
    }

    // Identity route: chi^2(f, f*_CT) / lambda^2 with the generic evaluator
    const Dist f_u = unit_uniform_dist();
    const Dist f_ct = to_dist(make_one_param_cubic(make_uniform(), lambda));
    out.identity = chi_square(f_u, f_ct, spec).value / (lambda * lambda);
    return out;
}

double z_for_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence level must lie in (0,1)");
    if (level == 0.90) return 1.645;
    if (level == 0.95) return 1.960;
    // Acklam's rational approximation of the standard normal quantile
    const double p = 0.5 * (1.0 + level);
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

namespace {

// ---- objective functions -------------------------------------------------

struct Box {
    std::vector<double> lo, hi;
};

double ct_poly_min(double l1, double l2) {
    double m = std::min(ctu_pdf({l1, l2}, 0.0), ctu_pdf({l1, l2}, 1.0));
    if (l2 != 1.0) {
        const double us = (l1 - l2) / (3.0 * (1.0 - l2));
        if (us > 0.0 && us < 1.0) m = std::min(m, ctu_pdf({l1, l2}, us));
    }
    return m;
}

// negative mean log-likelihood with a smooth penalty outside the valid region
double neg_loglik(FitModel model, std::span<const double> data, const std::vector<double>& th) {
    const double l1 = th[0], l2 = th[1];
    const double gmin = ct_poly_min(l1, l2);
    if (gmin < 0.0) return 1e4 * (1.0 - gmin);
    double s = 0.0;
    if (model == FitModel::ct_uniform) {
        for (double x : data) {
            const double g = ctu_pdf({l1, l2}, x);
            if (g <= 1e-300) return 1e4;
            s += std::log(g);
        }
    } else {
        const double k = th[2];
        if (k <= 0.0) return 1e4 * (1.0 - k);
        for (double x : data) {
            const double xk = std::pow(x, k);
            const double F = -std::expm1(-xk);
            const double g = ctu_pdf({l1, l2}, F);
            if (g <= 1e-300) return 1e4;
            s += std::log(k) + (k - 1.0) * std::log(x) - xk + std::log(g);
        }
    }
    return -s / static_cast<double>(data.size());
}

// ---- Nelder-Mead over a box ------------------------------------------------

struct NmResult {
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;
};

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                     std::vector<double> start, const Box& box, std::size_t max_iter) {
    const std::size_t dim = start.size();
    auto clamp = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < dim; ++i) x[i] = std::clamp(x[i], box.lo[i], box.hi[i]);
    };
    clamp(start);

    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) {
        const double span = box.hi[i] - box.lo[i];
        simplex[i + 1][i] += (start[i] + 0.1 * span <= box.hi[i]) ? 0.1 * span : -0.1 * span;
        clamp(simplex[i + 1]);
    }
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) fv[i] = fn(simplex[i]);

    NmResult out;
    for (std::size_t it = 0; it < max_iter; ++it) {
        std::vector<std::size_t> idx(dim + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        const std::size_t best = idx[0], worst = idx[dim], second = idx[dim - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            spread = std::max(spread, std::abs(simplex[best][i] - simplex[worst][i]));
        if (spread < 1e-10 && std::abs(fv[best] - fv[worst]) < 1e-12) {
            out.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t j = 0; j <= dim; ++j) {
            if (j == worst) continue;
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[j][i] / dim;
        }
        auto blend = [&](double t) {
            std::vector<double> x(dim);
            for (std::size_t i = 0; i < dim; ++i)
                x[i] = centroid[i] + t * (centroid[i] - simplex[worst][i]);
            clamp(x);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = fn(xr);
        if (fr < fv[best]) {
            std::vector<double> xe = blend(2.0);
            const double fe = fn(xe);
            if (fe < fr) { simplex[worst] = xe; fv[worst] = fe; }
            else         { simplex[worst] = xr; fv[worst] = fr; }
        } else if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[worst] ? 0.5 : -0.5);
            const double fc = fn(xc);
            if (fc < std::min(fr, fv[worst])) { simplex[worst] = xc; fv[worst] = fc; }
            else {
                for (std::size_t j = 0; j <= dim; ++j) {
                    if (j == best) continue;
                    for (std::size_t i = 0; i < dim; ++i)
                        simplex[j][i] = simplex[best][i] + 0.5 * (simplex[j][i] - simplex[best][i]);
                    fv[j] = fn(simplex[j]);
                }
            }
        }
    }
    std::size_t bi = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (fv[i] < fv[bi]) bi = i;
    out.x = simplex[bi];
    out.fx = fv[bi];
    return out;
}

// ---- symmetric linear algebra (dim <= 3) ----------------------------------

bool invert_sym(std::vector<double>& m, std::size_t dim) {
    std::vector<double> a(m);
    std::vector<double> inv(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) inv[i * dim + i] = 1.0;
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t rI = col + 1; rI < dim; ++rI)
            if (std::abs(a[rI * dim + col]) > std::abs(a[piv * dim + col])) piv = rI;
        if (std::abs(a[piv * dim + col]) < 1e-300) return false;
        if (piv != col)
            for (std::size_t j = 0; j < dim; ++j) {
                std::swap(a[piv * dim + j], a[col * dim + j]);
                std::swap(inv[piv * dim + j], inv[col * dim + j]);
            }
        const double d = a[col * dim + col];
        for (std::size_t j = 0; j < dim; ++j) {
            a[col * dim + j] /= d;
            inv[col * dim + j] /= d;
        }
        for (std::size_t rI = 0; rI < dim; ++rI) {
            if (rI == col) continue;
            const double f = a[rI * dim + col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                a[rI * dim + j] -= f * a[col * dim + j];
                inv[rI * dim + j] -= f * inv[col * dim + j];
            }
        }
    }
    m = inv;
    return true;
}

std::vector<double> observed_information(FitModel model, std::span<const double> data,
                                         const std::vector<double>& th, const Box& box) {
    const std::size_t dim = th.size();
    std::vector<double> H(dim * dim, 0.0);
    std::vector<double> h(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h[i] = 1e-4 * std::max(1.0, std::abs(th[i]));
        h[i] = std::min({h[i], (th[i] - box.lo[i]) * 0.5 + 1e-9, (box.hi[i] - th[i]) * 0.5 + 1e-9});
        h[i] = std::max(h[i], 1e-7);
    }
    auto f = [&](std::vector<double> x) { return neg_loglik(model, data, x); };
    const double f0 = f(th);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            double v;
            if (i == j) {
                auto xp = th, xm = th;
                xp[i] += h[i];
                xm[i] -= h[i];
                v = (f(xp) - 2.0 * f0 + f(xm)) / (h[i] * h[i]);
            } else {
                auto xpp = th, xpm = th, xmp = th, xmm = th;
                xpp[i] += h[i]; xpp[j] += h[j];
                xpm[i] += h[i]; xpm[j] -= h[j];
                xmp[i] -= h[i]; xmp[j] += h[j];
                xmm[i] -= h[i]; xmm[j] -= h[j];
                v = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h[i] * h[j]);
            }
            H[i * dim + j] = H[j * dim + i] = v;
        }
    }
    return H;
}

}  // namespace

FitResult mle_fit(std::span<const double> data, FitModel model, const FitOptions& opts) {
    if (data.size() < 30) throw std::invalid_argument("mle_fit requires n >= 30");
    const std::size_t dim = model == FitModel::ct_uniform ? 2 : 3;

    Box box;
    fit_parameter_box(model, box.lo, box.hi);
    if (model == FitModel::ct_uniform) {
        for (double x : data)
            if (!(x >= 0.0 && x <= 1.0))
                throw std::invalid_argument("ct_uniform data must lie in [0,1]");
    }
    if (model == FitModel::ct_weibull)
        for (double x : data)
            if (!(x > 0.0)) throw std::invalid_argument("ct_weibull data must be positive");

    // deterministic multi-start list
    std::vector<std::vector<double>> starts;
    if (!opts.init.empty()) {
        if (opts.init.size() != dim) throw std::invalid_argument("init has wrong dimension");
        starts.push_back(opts.init);
    }
    if (model == FitModel::ct_uniform) {
        starts.insert(starts.end(),
                      {{0.5, 0.0}, {0.25, 0.5}, {0.75, 0.5}, {0.5, 0.75}, {0.9, 0.9}});
    } else {
        double mean_log = 0.0, m2 = 0.0;
        std::size_t cnt = 0;
        for (double x : data) {
            ++cnt;
            const double lx = std::log(x);
            const double d = lx - mean_log;
            mean_log += d / static_cast<double>(cnt);
            m2 += d * (lx - mean_log);
        }
        const double sd_log = std::sqrt(std::max(m2 / static_cast<double>(cnt - 1), 1e-12));
        const double k0 = std::clamp(1.2825 / sd_log, 0.1, 15.0);  // pi/sqrt(6) / sd
        starts.insert(starts.end(),
                      {{0.5, 0.5, k0},
                       {0.25, 0.25, k0},
                       {0.75, 0.75, k0},
                       {0.5, 0.0, std::clamp(0.7 * k0, 0.1, 15.0)},
                       {0.5, 0.9, std::clamp(1.4 * k0, 0.1, 15.0)}});
    }

    auto objective = [&](const std::vector<double>& th) { return neg_loglik(model, data, th); };
    NmResult best;
    best.fx = std::numeric_limits<double>::infinity();
    for (const auto& s0 : starts) {
        NmResult r = nelder_mead(objective, s0, box, opts.max_iterations);
        if (r.fx < best.fx) best = r;
    }

    FitResult out;
    out.n = data.size();
    out.level = opts.level;
    out.converged = best.converged && std::isfinite(best.fx) && best.fx < 1e3;
    out.loglik = -best.fx * static_cast<double>(data.size());
    out.estimates = best.x;
    out.param_names = model == FitModel::ct_uniform
                          ? std::vector<std::string>{"lambda1", "lambda2"}
                          : std::vector<std::string>{"lambda1", "lambda2", "k"};

    // information matrix for Wald intervals
    std::vector<double> info;
    bool expected_ok = false;
    if (model == FitModel::ct_uniform && !opts.observed_information) {
        const FisherMatrix fm = fisher_matrix(CTParams{best.x[0], best.x[1]});
        info = {fm.i11, fm.i12, fm.i12, fm.i22};
        expected_ok = std::isfinite(fm.i11) && std::isfinite(fm.i12) && std::isfinite(fm.i22);
        out.fisher = fm;
        out.fisher.method = FisherMethod::quadrature;
    }
    if (!expected_ok) {
        info = observed_information(model, data, best.x, box);
        out.fisher.i11 = info[0];
        out.fisher.i12 = info[1];
        out.fisher.i22 = info[dim + 1];
        out.fisher.method = FisherMethod::observed;
    }

    std::vector<double> cov(info);
    out.ci_available = invert_sym(cov, dim);
    if (out.ci_available) {
        const double z = z_for_level(opts.level);
        for (std::size_t i = 0; i < dim; ++i) {
            const double var = cov[i * dim + i];
            if (!(var > 0.0) || !std::isfinite(var)) {
                out.ci_available = false;
                break;
            }
            const double se = std::sqrt(var / static_cast<double>(data.size()));
            out.se.push_back(se);
            ConfidenceInterval c;
            c.param = out.param_names[i];
            c.estimate = best.x[i];
            c.lo = std::max(best.x[i] - z * se, box.lo[i]);
            c.hi = std::min(best.x[i] + z * se, box.hi[i]);
            out.ci.push_back(c);
        }
    }
    if (!out.ci_available) {
        out.ci.clear();
        out.se.clear();
    }
    return out;
}

void fit_parameter_box(FitModel model, std::vector<double>& lo, std::vector<double>& hi) {
    lo = {0.0, -1.0};
    hi = {1.0, 1.0};
    if (model == FitModel::ct_weibull) {
        lo.push_back(0.05);
        hi.push_back(20.0);
    }
}

} // namespace ctinfo
