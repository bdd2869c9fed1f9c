#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ctinfo/ct_model.hpp"

namespace ctinfo {

using cplx = std::complex<double>;

/// Roots of the CT-uniform density polynomial
/// g(u) = 3(1-l2) u^2 + 2(l2-l1) u + l1, together with
/// r = sqrt(l1^2 + l2^2 + l1 l2 - 3 l1) (half the root separation scaled by
/// the leading coefficient; imaginary on the complex branch). p carries +r,
/// q carries -r. Undefined when l2 = 1 (the polynomial degenerates to linear).
struct CtuRoots {
    cplx r, p, q;
    double r_squared = 0.0;
    bool real_branch = false;

    static std::optional<CtuRoots> make(const CTParams& params);
};

/// log(x/(x-1)) on the principal branch.
cplx log_ratio(cplx x);

/// P(x) * log(x/(x-1)) with the removable x->0 limit (requires P(0)=0,
/// which holds for every term the closed forms use).
cplx log_ratio_term(const std::vector<double>& poly, cplx x);

/// Closed form of int_0^1 P(u) / (a u^2 + b u + c) du by exact polynomial
/// division plus root log terms. coeffs[k] multiplies u^k. Returns nullopt
/// when the evaluation is degenerate (a ~ 0, double root, root on [0,1]
/// with nonvanishing residue, or a non-real result).
std::optional<double> integral_poly_over_quadratic(const std::vector<double>& coeffs,
                                                   double a, double b, double c);

/// Same, specialized to the CT-uniform density polynomial g.
std::optional<double> integral_poly_over_g(const std::vector<double>& coeffs,
                                           const CTParams& params);

/// (1/r) artanh(r/denom) with the correct branch on both sides of r^2 = 0:
/// real artanh for r^2 > 0 (requires |r/denom| < 1), atan2(s, denom)/s with
/// s = sqrt(-r^2) on the complex branch. Returns nullopt when undefined.
std::optional<double> atanh_over_r(double r_squared, double denom);

} // namespace ctinfo
