#pragma once

#include <optional>

#include "ctinfo/dist.hpp"
#include "ctinfo/quadrature.hpp"

namespace ctinfo {

/// Differential Shannon entropy -int f log f, integrated through the
/// distribution's own quantile so the integrand lives on (0,1).
Estimate shannon_entropy(const Dist& d, const QuadratureSpec& spec = {});

/// Weighted Shannon entropy -int psi(x) f log f dx, psi nonnegative.
Estimate weighted_entropy(const Dist& d, const std::function<double(double)>& weight,
                          const QuadratureSpec& spec = {});

/// Entropy of a CT distribution split into the five decomposition terms:
/// total = l1 H(f) + (1-l2) H(f_max) + 2(l2-l1) H^F(f) - (1-l2) H(f_W)
///         + H(f_UCT).
/// `total` is measured directly from the CT density; sum() adds the terms,
/// so |total - sum()| is the decomposition residual.
struct EntropyDecomposition {
    double total = 0.0;
    double term_lambda1_Hf = 0.0;
    double term_Hfmax = 0.0;
    double term_weighted = 0.0;
    double term_HfW = 0.0;
    double term_HfUCT = 0.0;
    double theta = 0.0;  // term_HfUCT + term_HfW
    bool converged = true;

    double sum() const {
        return term_lambda1_Hf + term_Hfmax + term_weighted + term_HfW + term_HfUCT;
    }
};

EntropyDecomposition ct_entropy_decomposed(const CTDistribution& ct,
                                           const QuadratureSpec& spec = {});

/// Closed form of theta(l1,l2) = H(f_UCT) - (1-l2) H(f_W). Complex-branch
/// cells are evaluated in complex arithmetic and the real part returned.
/// nullopt when l2 = 1 or the root algebra degenerates (callers fall back
/// to quadrature).
std::optional<double> theta_closed_form(const CTParams& params);

/// theta by quadrature (the oracle the closed form is checked against).
double theta_quadrature(const CTParams& params, const QuadratureSpec& spec = {});

/// CT Shannon entropy (the Jensen-type gap of Shannon entropy over the
/// order-statistics mixture). Three routes that must agree:
///   definition:  H(f_CT) - l1 H(f) - w2 H(f_23) - w3 H(f_max)
///   via KL:      (1-l2) KL(f_max,f) + (1/3)(l2-l1) KL(f_23,f_max)
///                - KL(f_CT,f) + (log3 - 1)(l2-l1)
///   closed form: the baseline-free expression assembled from the
///                KL closed forms.
/// Requires l1 in [0,1], l2 in [-1,1).
double cts_definition(const CTDistribution& ct, const QuadratureSpec& spec = {});
double cts_via_kl(const CTDistribution& ct, const QuadratureSpec& spec = {});
double cts_closed_form(const CTParams& params, const QuadratureSpec& spec = {});

/// Quadratic-transmutation entropy identities (lambda2 = 1 reduction).
/// "pair max" is the larger of two i.i.d. baseline draws (density 2 f F).
struct QuadraticEntropyIdentity {
    double h_direct;        // H of the quadratic transmuted density, measured
    double h_decomposed;    // (1+l) H(f) - l H(f_max2) + l H(f_V) + H(f_UT)
    double weighted_lhs;    // -2 lambda H^F(f)
    double weighted_rhs;    // -lambda H(f_max2) + lambda H(f_V)
    double h_fV;            // entropy of Beta(2,1)
};

QuadraticEntropyIdentity entropy_special_cases(double lambda, const Baseline& baseline,
                                               const QuadratureSpec& spec = {});

} // namespace ctinfo
