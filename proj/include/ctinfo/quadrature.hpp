#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

#include "ctinfo/baseline.hpp"

namespace ctinfo {

/// Tolerances and limits for the adaptive integrator.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_subdivisions = 2000;
    double endpoint_eps = 1e-12;  // clip for log-singular endpoints
};

/// Value-with-error-bound result; the universal oracle output.
/// converged implies error_bound <= max(abs_tol, rel_tol*|value|).
struct Estimate {
    double value = 0.0;
    double error_bound = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (7,15) integration of fn over [a,b].
/// Non-convergence is reported through the flag, never thrown.
Estimate integrate(const std::function<double(double)>& fn, double a, double b,
                   const QuadratureSpec& spec = {});

/// Integral over the open unit interval, clipped at endpoint_eps.
/// fn must be finite on (endpoint_eps, 1-endpoint_eps).
Estimate integrate_unit(const std::function<double(double)>& fn,
                        const QuadratureSpec& spec = {});

/// Integral of fn(x) dx over the baseline's support via the substitution
/// u = F(x): integrand fn(quantile(u)) / density_at_quantile(u).
Estimate integrate_support(const std::function<double(double)>& fn, const Baseline& b,
                           const QuadratureSpec& spec = {});

/// Monte-Carlo expectation of fn under the sampler, n >= 2 draws.
/// error_bound is three standard errors of the sample mean.
Estimate mc_expect(const std::function<double(double)>& fn,
                   const std::function<double(std::mt19937_64&)>& sampler,
                   std::size_t n, std::uint64_t seed);

} // namespace ctinfo
