#pragma once

#include <limits>
#include <map>
#include <string>

namespace ctinfo {

/// Support interval of a distribution; infinite endpoints allowed.
struct Support {
    double lo = 0.0;
    double hi = 1.0;
};

enum class Family { uniform, exponential, pareto, power, weibull };

/// Parent distribution F(.) supplying the primitives every measure needs:
/// CDF, PDF, quantile and density-evaluated-at-quantile. Immutable after
/// construction; safe to share across threads.
class Baseline {
public:
    Baseline(Family family, double p1 = 0.0, double p2 = 0.0);

    Family family() const { return family_; }
    const std::string& name() const { return name_; }
    Support support() const { return support_; }

    double cdf(double x) const;
    double pdf(double x) const;

    /// Inverse CDF. u must lie in (0,1); endpoints map to the support bounds.
    double quantile(double u) const;

    /// pdf(quantile(u)) evaluated in closed form per family, u in (0,1).
    double density_at_quantile(double u) const;

    double param1() const { return p1_; }
    double param2() const { return p2_; }

private:
    Family family_;
    double p1_, p2_;
    std::string name_;
    Support support_;
};

Baseline make_uniform();
Baseline make_exponential(double beta);
Baseline make_pareto(double alpha);
Baseline make_power(double b, double c);
Baseline make_weibull(double k);

/// Factory from family name and named parameters, e.g. ("exp", {{"beta",2}}).
/// Throws std::invalid_argument for unknown names or out-of-domain parameters.
Baseline make_baseline(const std::string& name, const std::map<std::string, double>& params);

} // namespace ctinfo
