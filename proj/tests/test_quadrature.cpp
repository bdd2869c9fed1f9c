#include <doctest.h>

#include <cmath>

#include "ctinfo/quadrature.hpp"
#include "ctinfo/rng.hpp"

using namespace ctinfo;

TEST_CASE("polynomial integrals are exact") {
    const Estimate e = integrate_unit([](double u) { return 3.0 * u * u; });
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("endpoint-log integrands reach tolerance") {
    // int_0^1 3u^2 log(3u^2) du = log 3 - 2/3
    const Estimate a = integrate_unit([](double u) { return 3.0 * u * u * std::log(3.0 * u * u); });
    CHECK(a.converged);
    CHECK(a.value == doctest::Approx(std::log(3.0) - 2.0 / 3.0).epsilon(1e-10));

    // int_0^1 2u log(2u) du = log 2 - 1/2
    const Estimate b = integrate_unit([](double u) { return 2.0 * u * std::log(2.0 * u); });
    CHECK(b.converged);
    CHECK(b.value == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-10));
}

TEST_CASE("non-convergence is reported, not thrown") {
    QuadratureSpec tight;
    tight.max_subdivisions = 3;
    tight.abs_tol = 1e-14;
    tight.rel_tol = 1e-14;
    const Estimate e = integrate_unit([](double u) { return std::log(u) * std::log(1.0 - u); },
                                      tight);
    CHECK_FALSE(e.converged);
    CHECK(std::isfinite(e.value));
}

TEST_CASE("halving tolerances never degrades the smoke integrals") {
    struct Case {
        std::function<double(double)> fn;
        double exact;
    };
    const std::vector<Case> cases = {
        {[](double u) { return 3.0 * u * u * std::log(3.0 * u * u); }, std::log(3.0) - 2.0 / 3.0},
        {[](double u) { return 1.0 / (1.0 + u * u); }, std::atan(1.0)},
        {[](double u) { return std::exp(u); }, std::exp(1.0) - 1.0},
    };
    for (const auto& c : cases) {
        QuadratureSpec loose, tight;
        loose.abs_tol = loose.rel_tol = 1e-6;
        tight.abs_tol = tight.rel_tol = 5e-7;
        const double err_loose = std::abs(integrate_unit(c.fn, loose).value - c.exact);
        const double err_tight = std::abs(integrate_unit(c.fn, tight).value - c.exact);
        CHECK(err_tight <= err_loose + 1e-15);
    }
}

TEST_CASE("support integrals through the u-substitution") {
    const Baseline e1 = make_exponential(1.0);
    CHECK(integrate_support([&](double x) { return e1.pdf(x); }, e1).value ==
          doctest::Approx(1.0).epsilon(1e-9));

    const Baseline uni = make_uniform();
    CHECK(integrate_support([&](double x) { return x * (1.0 - x); }, uni).value ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(integrate_support([&](double x) { return x * x * x * (1.0 - x * x * x); }, uni).value ==
          doctest::Approx(3.0 / 28.0).epsilon(1e-10));
}

TEST_CASE("monte-carlo expectation with a three-sigma bound") {
    auto unit_sampler = [](std::mt19937_64& rng) { return u01(rng); };

    const Estimate ones = mc_expect([](double) { return 1.0; }, unit_sampler, 100, 1);
    CHECK(ones.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ones.error_bound == doctest::Approx(0.0));

    const Estimate mean = mc_expect([](double x) { return x; }, unit_sampler, 1'000'000, 2);
    CHECK(std::abs(mean.value - 0.5) < 0.0015);

    // E[log f_W(W)], W ~ Beta(3,1): matches the quadrature oracle within 3 SE
    auto beta31_sampler = [](std::mt19937_64& rng) { return std::cbrt(u01(rng)); };
    const Estimate lw = mc_expect([](double w) { return std::log(3.0 * w * w); }, beta31_sampler,
                                  1'000'000, 3);
    CHECK(std::abs(lw.value - (std::log(3.0) - 2.0 / 3.0)) < lw.error_bound);
}

TEST_CASE("oracle cross-check: quadrature agrees with monte-carlo across the catalog") {
    // entropy / KL / chi-square / GMD integrands over valid CT-uniform
    // densities, 20 random parameter points in total
    auto rng = make_rng(99);
    int tested = 0;
    auto uniform_sampler = [](std::mt19937_64& r) { return u01(r); };
    while (tested < 20) {
        const double l1 = u01(rng);
        const double l2 = -1.0 + 2.0 * u01(rng);
        const double rsq = l1 * l1 + l2 * l2 + l1 * l2 - 3.0 * l1;
        const double us = (l1 - l2) / (3.0 * (1.0 - l2));
        const bool valid = l1 > 0.05 && l2 < 1.0 && (us <= 0.0 || us >= 1.0 || rsq <= 0.0);
        if (!valid) continue;
        ++tested;
        auto g = [=](double u) { return l1 + 2.0 * (l2 - l1) * u + 3.0 * (1.0 - l2) * u * u; };
        std::function<double(double)> integrand;
        switch (tested % 4) {
            case 0: integrand = [=](double u) { return -g(u) * std::log(g(u)); }; break;
            case 1: integrand = [=](double u) { return g(u) * std::log(g(u)); }; break;
            case 2: {
                integrand = [=](double u) { const double d = g(u) - 1.0; return d * d / 1.0; };
                break;
            }
            default: integrand = [=](double u) { return 2.0 * u * (1.0 - u) * g(u); }; break;
        }
        const double q = integrate_unit(integrand).value;
        const Estimate m = mc_expect(integrand, uniform_sampler, 400'000, 1000 + tested);
        CAPTURE(l1);
        CAPTURE(l2);
        CHECK(std::abs(q - m.value) < std::max(m.error_bound, 1e-3));
    }
}
