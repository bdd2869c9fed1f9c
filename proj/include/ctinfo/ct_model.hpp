#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ctinfo/baseline.hpp"

namespace ctinfo {

/// The (lambda1, lambda2) parameterization of a cubic transmuted distribution.
/// validate() enforces nonnegativity of the implied density polynomial
/// g(u) = l1 + 2(l2-l1)u + 3(1-l2)u^2 on [0,1]; strict mode additionally
/// enforces the l1 in [0,1] box (the relaxed box [0,2] admits the quadratic
/// reduction l1 = 1+lambda).
struct CTParams {
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    void validate(bool strict = false) const;  // throws std::invalid_argument
    bool is_valid(bool strict = false) const;
};

/// Density polynomial of the CT-uniform distribution at u in [0,1].
inline double ctu_pdf(const CTParams& p, double u) {
    return p.lambda1 + 2.0 * (p.lambda2 - p.lambda1) * u + 3.0 * (1.0 - p.lambda2) * u * u;
}

/// CDF polynomial of the CT-uniform distribution at u in [0,1].
inline double ctu_cdf(const CTParams& p, double u) {
    return p.lambda1 * u + (p.lambda2 - p.lambda1) * u * u + (1.0 - p.lambda2) * u * u * u;
}

/// Mixing probabilities of the three-order-statistics mixture.
struct MixingProbs {
    double pi1 = 0.0, pi2 = 0.0, pi3 = 1.0;
    void validate() const;  // each in [0,1], sum 1 within 1e-12
};

enum class CTKind { cubic, quadratic, one_param_cubic };

/// Cubic (or quadratic, or one-parameter cubic) transmuted distribution over
/// a baseline. Quadratic lambda maps to (1+lambda, 1); one-parameter lambda
/// maps to (1+lambda, 1-lambda); both are exact re-parameterizations.
/// Immutable and shareable.
class CTDistribution {
public:
    CTDistribution(Baseline baseline, CTParams params, CTKind kind = CTKind::cubic,
                   double kind_lambda = 0.0);

    const Baseline& baseline() const { return baseline_; }
    const CTParams& params() const { return params_; }
    CTKind kind() const { return kind_; }
    double kind_lambda() const { return kind_lambda_; }

    double cdf(double x) const;
    double pdf(double x) const;
    double quantile(double u) const;
    Support support() const { return baseline_.support(); }

    /// Component weights of the order-statistics mixture representation:
    /// pdf = w1 f + w2 f_{2:3} + w3 f_max.
    double weight_f() const { return params_.lambda1; }
    double weight_med() const { return (params_.lambda2 - params_.lambda1) / 3.0; }
    double weight_max() const { return (3.0 - params_.lambda2 - 2.0 * params_.lambda1) / 3.0; }

    /// Order-statistics mixing probabilities (3 pi1 = l1, 3 pi2 = l2);
    /// a genuine probability vector only when both lambdas are nonnegative.
    MixingProbs mixing_probs() const;

private:
    Baseline baseline_;
    CTParams params_;
    CTKind kind_;
    double kind_lambda_;
};

CTDistribution make_ct(const Baseline& baseline, const CTParams& params);
CTDistribution make_quadratic(const Baseline& baseline, double lambda);
CTDistribution make_one_param_cubic(const Baseline& baseline, double lambda);

enum class OrderStat { min13, med13, max13, beta21, beta31 };

/// One order-statistic component of the mixture (or the beta components the
/// u-space reductions live on; those ignore the baseline and sit on (0,1)).
struct OrderStatComponent {
    OrderStat which;
    Baseline baseline;
};

double component_pdf(const OrderStatComponent& c, double x);
double component_cdf(const OrderStatComponent& c, double x);
double component_quantile(const OrderStatComponent& c, double u);

/// Mixture sampling algorithm: per draw, simulate V ~ U(0,1), three i.i.d.
/// baseline variates, sort, and select the order statistic by cumulative
/// thresholds pi1, pi1+pi2. Deterministic given the seed.
std::vector<double> sample_ct(const MixingProbs& mix, const Baseline& baseline,
                              std::size_t n, std::uint64_t seed);

/// CDF of the order-statistics mixture:
/// 3 pi1 F + 3(pi2-pi1) F^2 + (1-3 pi2) F^3.
double mixture_cdf(const MixingProbs& mix, const Baseline& baseline, double x);

/// One-sample Kolmogorov-Smirnov distance between a sample and a CDF.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

} // namespace ctinfo
