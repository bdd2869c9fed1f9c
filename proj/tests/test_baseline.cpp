#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ctinfo/quadrature.hpp"

using namespace ctinfo;

namespace {

std::vector<Baseline> all_families() {
    return {make_uniform(), make_exponential(2.0), make_pareto(2.0), make_power(2.0, 3.0),
            make_weibull(1.5)};
}

}  // namespace

TEST_CASE("spot values") {
    CHECK(make_uniform().cdf(0.3) == doctest::Approx(0.3));
    CHECK(make_exponential(2.0).quantile(1.0 - std::exp(-2.0)) == doctest::Approx(1.0));
    CHECK(make_power(2.0, 3.0).cdf(1.0) == doctest::Approx(0.125));
}

TEST_CASE("density at quantile") {
    CHECK(make_uniform().density_at_quantile(0.7) == doctest::Approx(1.0));
    CHECK(make_exponential(1.0).density_at_quantile(0.5) == doctest::Approx(0.5));
    // power(b=2,c=3): F^{-1}(1/8) = 1, f(1) = c 1^{c-1} / b^c = 3/8
    CHECK(make_power(2.0, 3.0).density_at_quantile(0.125) == doctest::Approx(0.375));
}

TEST_CASE("quantile round trip on a 1000-point grid") {
    for (const Baseline& b : all_families()) {
        CAPTURE(b.name());
        for (int i = 1; i < 1000; ++i) {
            const double u = i / 1000.0;
            CHECK(std::abs(b.cdf(b.quantile(u)) - u) < 1e-10);
        }
    }
}

TEST_CASE("density at quantile equals pdf of quantile") {
    for (const Baseline& b : all_families()) {
        CAPTURE(b.name());
        for (int i = 1; i < 100; ++i) {
            const double u = i / 100.0;
            CHECK(std::abs(b.density_at_quantile(u) - b.pdf(b.quantile(u))) < 1e-12);
        }
    }
}

TEST_CASE("pdf integrates to one") {
    for (const Baseline& b : all_families()) {
        CAPTURE(b.name());
        const Estimate e = integrate_support([&](double x) { return b.pdf(x); }, b);
        CHECK(e.value == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("cdf is monotone and pdf nonnegative") {
    for (const Baseline& b : all_families()) {
        CAPTURE(b.name());
        double prev = 0.0;
        for (int i = 1; i < 200; ++i) {
            const double x = b.quantile(i / 200.0);
            CHECK(b.pdf(x) >= 0.0);
            const double c = b.cdf(x);
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("parameter and domain errors") {
    CHECK_THROWS_AS(make_exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_pareto(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_power(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_baseline("cauchy", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_baseline("exp", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform().density_at_quantile(1.5), std::domain_error);
    CHECK_THROWS_AS(make_uniform().density_at_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(make_exponential(1.0).quantile(-0.1), std::domain_error);
}

TEST_CASE("factory by name") {
    const Baseline p = make_baseline("pareto", {{"alpha", 2.0}});
    CHECK(p.cdf(2.0) == doctest::Approx(0.75));
    const Baseline w = make_baseline("weibull", {{"k", 1.0}});
    CHECK(w.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
}
