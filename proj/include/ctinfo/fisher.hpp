#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctinfo/ct_model.hpp"
#include "ctinfo/divergences.hpp"
#include "ctinfo/quadrature.hpp"

namespace ctinfo {

enum class FisherMethod { closed_form, quadrature, observed };

/// Symmetric 2x2 information matrix for (lambda1, lambda2).
/// Entries are per-observation expected (or observed) information.
struct FisherMatrix {
    double i11 = 0.0, i12 = 0.0, i22 = 0.0;
    FisherMethod method = FisherMethod::quadrature;

    double det() const { return i11 * i22 - i12 * i12; }
    bool positive_semidefinite(double tol = 1e-9) const {
        return i11 >= -tol && i22 >= -tol && det() >= -tol;
    }
};

/// Expected Fisher information of a CT distribution in (lambda1, lambda2).
/// The u-substituted entries depend only on the density polynomial, so the
/// matrix is baseline-invariant.
FisherMatrix fisher_matrix(const CTDistribution& ct, const QuadratureSpec& spec = {});
FisherMatrix fisher_matrix(const CTParams& params, const QuadratureSpec& spec = {});

/// CT-uniform closed-form matrix (omega terms); nullopt on degenerate cells.
std::optional<FisherMatrix> fisher_ct_uniform_closed(const CTParams& params);

/// One-parameter CT Fisher information: the three routes that must agree.
struct OneParamFisher {
    double value = 0.0;        // closed form (partial fractions), limit 2/15 at 0
    double identity = 0.0;     // chi^2(f, f*_CT) / lambda^2
    double direct = 0.0;       // quadrature of the squared score
    Method method = Method::closed_form;
};

OneParamFisher fisher_one_param(double lambda, const QuadratureSpec& spec = {});

/// z-quantile for a two-sided confidence level; 0.90 and 0.95 are pinned to
/// the conventional 1.645 / 1.960, other levels use a rational approximation
/// of the normal quantile.
double z_for_level(double level);

enum class FitModel { ct_uniform, ct_weibull };

struct ConfidenceInterval {
    std::string param;
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct FitResult {
    std::vector<std::string> param_names;
    std::vector<double> estimates;
    std::vector<double> se;         // standard errors of the estimates
    double loglik = 0.0;
    FisherMatrix fisher;            // (lambda1, lambda2) block
    std::vector<ConfidenceInterval> ci;
    double level = 0.95;
    bool converged = false;
    bool ci_available = true;
    std::size_t n = 0;
};

struct FitOptions {
    double level = 0.95;
    std::vector<double> init;       // optional start; empty = multi-start defaults
    bool observed_information = false;  // force observed info for ct_uniform too
    std::size_t max_iterations = 2000;
};

/// Maximum-likelihood fit over the constrained parameter region (box plus
/// density nonnegativity), derivative-free simplex with multi-start.
/// Wald intervals from the inverse information, intersected with the box.
FitResult mle_fit(std::span<const double> data, FitModel model, const FitOptions& opts = {});

/// Parameter box of a fit model (the region intervals are clamped to).
void fit_parameter_box(FitModel model, std::vector<double>& lo, std::vector<double>& hi);

} // namespace ctinfo
