#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "ctinfo/ctu_algebra.hpp"
#include "ctinfo/dist.hpp"
#include "ctinfo/quadrature.hpp"

namespace ctinfo {

enum class Method { closed_form, quadrature, monte_carlo };

/// Divergence value with provenance. A divergent integral is reported as an
/// infinite value, never thrown. Tiny negatives from roundoff are clipped.
struct DivergenceResult {
    double value = 0.0;
    Method method = Method::quadrature;
    double error_bound = 0.0;

    bool divergent() const { return !std::isfinite(value); }
};

/// Kullback-Leibler divergence int f1 log(f1/f2), via u = F1(x).
DivergenceResult kl(const Dist& f1, const Dist& f2, const QuadratureSpec& spec = {});

/// KL computed in x-space through an explicit baseline substitution; the
/// second route of the "free from the parent distribution" checks.
DivergenceResult kl_x_space(const Dist& f1, const Dist& f2, const Baseline& baseline,
                            const QuadratureSpec& spec = {});

/// Jeffreys divergence KL(f1,f2) + KL(f2,f1); symmetric by construction.
DivergenceResult jeffreys(const Dist& f1, const Dist& f2, const QuadratureSpec& spec = {});

/// Chi-square divergence int (f1-f2)^2 / f2, via u = F2(x).
DivergenceResult chi_square(const Dist& f1, const Dist& f2, const QuadratureSpec& spec = {});

/// Symmetric chi-square divergence, equal to the sum of both directions.
DivergenceResult symmetric_chi_square(const Dist& f1, const Dist& f2,
                                      const QuadratureSpec& spec = {});

/// The seven KL divergences between the CT-uniform distribution and its
/// components that admit closed forms.
enum class KlForm {
    uniform_to_ct,  // (a) KL(f_U, f_UCT)
    ct_to_uniform,  // (b) KL(f_UCT, f_U)
    med_to_ct,      // (c) KL(f_U23, f_UCT)
    ct_to_max,      // (d) KL(f_UCT, f_W)
    max_to_ct,      // (e) KL(f_W, f_UCT)
    med_to_max,     // (f) KL(f_U23, f_W)  = log 2
    max_to_uniform, // (g) KL(f_W, f_U)    = log 3 - 2/3
};

/// Closed-form evaluation; degenerate parameter regions (l2 = 1, double
/// root, singular residues) fall back to quadrature with the method tag set
/// accordingly.
DivergenceResult kl_closed_form(KlForm form, const CTParams& params,
                                const QuadratureSpec& spec = {});

/// The same seven divergences by unit-interval quadrature (the oracle).
DivergenceResult kl_form_quadrature(KlForm form, const CTParams& params,
                                    const QuadratureSpec& spec = {});

enum class KlPair {
    f_vs_ct,      // KL(f, f_CT)      = KL(f_U, f_UCT)
    ct_vs_f,      // KL(f_CT, f)      = KL(f_UCT, f_U)
    med_vs_ct,    // KL(f_23, f_CT)   = KL(f_U23, f_UCT)
    med_vs_max,   // KL(f_23, f_max)  = KL(f_U23, f_W)
    ct_vs_max,    // KL(f_CT, f_max)  = KL(f_UCT, f_W)
    max_vs_ct,    // KL(f_max, f_CT)  = KL(f_W, f_UCT)
    max_vs_f,     // KL(f_max, f)     = KL(f_W, f_U)
};

/// Evaluates one reduction pair both ways: in x-space under the given
/// baseline and in u-space on the unit interval. The two agreeing is the
/// "free from the underlying parent distribution" claim.
std::pair<double, double> kl_reduction_check(KlPair pair, const Baseline& baseline,
                                             const CTParams& params,
                                             const QuadratureSpec& spec = {});

enum class MixDirection { mix_to_ct, ct_to_mix };

/// KL between the general f/f_max mixture f_mix = v f + 3(1-v) f F^2 and the
/// CT distribution, in closed form (quadrature fallback on degenerate cells).
DivergenceResult kl_mixture_ct(double v, const CTParams& params, MixDirection direction,
                               const QuadratureSpec& spec = {});

/// The three chi-square closed forms.
enum class ChiForm {
    ct_to_uniform,  // (a) chi2(f_UCT, f_U): polynomial
    uniform_to_ct,  // (b) chi2(f_U, f_UCT): artanh form
    max_to_ct,      // (c) chi2(f_W, f_UCT): sigma(p,q) form
};

DivergenceResult chi_square_closed_form(ChiForm form, const CTParams& params,
                                        const QuadratureSpec& spec = {});

DivergenceResult chi_form_quadrature(ChiForm form, const CTParams& params,
                                     const QuadratureSpec& spec = {});

} // namespace ctinfo
