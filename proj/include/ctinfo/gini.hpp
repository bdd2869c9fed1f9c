#pragma once

#include <optional>

#include "ctinfo/dist.hpp"
#include "ctinfo/quadrature.hpp"

namespace ctinfo {

/// Gini's mean difference 2 int F(1-F) dx = E|X1 - X2|, via u = F(x).
Estimate gmd(const Dist& d, const QuadratureSpec& spec = {});

/// GMD of a CT distribution split per the decomposition
/// total = l1^2 GMD(F) + (1-l2)^2 GMD(F_max) + R*,
/// R* = 2 int (A u + B u^2 + C u^3 + D u^4 + E u^5) / f(F^{-1}(u)) du.
/// total is measured directly; sum() adds the three decomposition terms.
struct GmdDecomposition {
    double total = 0.0;
    double term_f = 0.0;
    double term_fmax = 0.0;
    double r_star = 0.0;
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0;
    bool converged = true;

    double sum() const { return term_f + term_fmax + r_star; }
};

/// The five R* polynomial constants as functions of (l1, l2).
void gmd_constants(const CTParams& p, double& A, double& B, double& C, double& D, double& E);

GmdDecomposition gmd_ct_decomposed(const CTDistribution& ct, const QuadratureSpec& spec = {});

/// Closed form of the CT GMD under the power(b,c) baseline, exact in the
/// integrals. The GMD(F_max) coefficient is 1/(3c+1)-1/(6c+1); the reference
/// middle term it corrects is in the erratum report.
struct PowerGmd {
    double total = 0.0;
    double term_f = 0.0;
    double term_fmax = 0.0;
    double r_star = 0.0;
};

PowerGmd gmd_power_example(double b, double c, const CTParams& params);

/// Quadratic-case R* (lambda1 = 1+lambda, lambda2 = 1), the corrected
/// two-integral form: 2 l^2 int F^2(1-F^2) dx - 2 l(1+l) int u(1-u)(1+2u)/f du.
double rstar_quadratic(const Baseline& baseline, double lambda,
                       const QuadratureSpec& spec = {});

/// Energy distance int (F1 - F2)^2 dx, via u = F1(x).
Estimate energy_distance(const Dist& d1, const Dist& d2, const QuadratureSpec& spec = {});

/// CT Gini's mean difference (the Jensen-type gap of GMD over the mixture),
/// direct definition route. Requires l1 in [0,1], l2 in [-1,1).
double ctg(const CTDistribution& ct, const QuadratureSpec& spec = {});

/// Energy-distance weights of the representation
/// CTG = eta1 CD(F,F_CT) + eta2 CD(F_max,F_CT) + (1-eta1-eta2) CD(F_23,F_CT).
/// Reference weights kept as a check target: they do not reproduce the
/// definition (see erratum report). Undefined at l1 = 1/2.
struct CtgWeights {
    double eta1 = 0.0;
    double eta2 = 0.0;
};

std::optional<CtgWeights> ctg_weights(const CTParams& params);
std::optional<CtgWeights> ctg_weights_one_param(double lambda);

std::optional<double> ctg_via_energy(const CTDistribution& ct, const QuadratureSpec& spec = {});

} // namespace ctinfo
