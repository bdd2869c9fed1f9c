#pragma once

#include <functional>
#include <memory>
#include <string>

#include "ctinfo/ct_model.hpp"

namespace ctinfo {

/// Uniform view of a distribution for the measure evaluators: density, CDF
/// and quantile over a common support. Divergence integrals substitute
/// u = F(x) through one side's quantile, so every integrand lives on (0,1).
struct Dist {
    std::string name;
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    std::function<double(double)> quantile;
    Support support;
};

Dist to_dist(const Baseline& b);
Dist to_dist(const CTDistribution& ct);
Dist to_dist(const OrderStatComponent& c);

Dist unit_uniform_dist();
Dist beta21_dist();  // V ~ Beta(2,1), pdf 2u
Dist beta31_dist();  // W ~ Beta(3,1), pdf 3u^2

/// CT-uniform distribution as a view (pdf g(u) on (0,1)).
Dist ctu_dist(const CTParams& params);

/// General mixture of the baseline density and the triple max:
/// f_mix = v f + 3(1-v) f F^2, v in [0,1].
Dist mixture_f_fmax_dist(const Baseline& b, double v);

} // namespace ctinfo
