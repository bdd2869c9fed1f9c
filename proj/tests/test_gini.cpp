#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ctinfo/gini.hpp"
#include "ctinfo/quadrature.hpp"
#include "ctinfo/rng.hpp"

using namespace ctinfo;

namespace {

CTParams random_valid_params(std::mt19937_64& rng) {
    for (;;) {
        const CTParams p{u01(rng), -1.0 + 2.0 * u01(rng)};
        if (p.is_valid()) return p;
    }
}

}  // namespace

TEST_CASE("gmd spot values") {
    CHECK(gmd(to_dist(make_uniform())).value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(gmd(to_dist({OrderStat::max13, make_uniform()})).value ==
          doctest::Approx(3.0 / 14.0).epsilon(1e-9));
    CHECK(gmd(to_dist(make_exponential(1.0))).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gmd scales linearly") {
    // power(b, 1) is the uniform distribution on (0, b)
    for (double a : {0.5, 2.0}) {
        CHECK(gmd(to_dist(make_power(a, 1.0))).value ==
              doctest::Approx(a / 3.0).epsilon(1e-9));
    }
}

TEST_CASE("gmd equals the expected absolute pair difference (monte carlo)") {
    for (const Baseline& b : {make_uniform(), make_exponential(1.0), make_power(2.0, 3.0)}) {
        CAPTURE(b.name());
        auto rng = make_rng(77);
        double mean = 0.0, m2 = 0.0;
        const std::size_t n = 1'000'000;
        for (std::size_t i = 1; i <= n; ++i) {
            const double v = std::abs(b.quantile(u01(rng)) - b.quantile(u01(rng)));
            const double d = v - mean;
            mean += d / static_cast<double>(i);
            m2 += d * (v - mean);
        }
        const double se = std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
        CHECK(std::abs(mean - gmd(to_dist(b)).value) < 3.0 * se);
    }
}

TEST_CASE("gmd decomposition constants and the (0.5, 0.5) cell") {
    const GmdDecomposition d = gmd_ct_decomposed(make_ct(make_uniform(), {0.5, 0.5}));
    CHECK(d.A == doctest::Approx(0.25));
    CHECK(d.B == doctest::Approx(0.0));
    CHECK(d.C == doctest::Approx(0.25));
    CHECK(d.D == doctest::Approx(-0.5));
    CHECK(d.E == doctest::Approx(0.0));
    CHECK(d.r_star == doctest::Approx(0.175).epsilon(1e-9));
    CHECK(d.term_f == doctest::Approx(0.25 / 3.0).epsilon(1e-9));
    CHECK(d.term_fmax == doctest::Approx(0.25 * 3.0 / 14.0).epsilon(1e-9));
    CHECK(std::abs(d.total - d.sum()) < 1e-8);
}

TEST_CASE("gmd decomposition: degenerate parameters") {
    const GmdDecomposition d = gmd_ct_decomposed(make_ct(make_uniform(), {1.0, 1.0}));
    CHECK(d.total == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(d.r_star == doctest::Approx(0.0).epsilon(1e-10));
    for (double c : {d.A, d.B, d.C, d.D, d.E}) CHECK(c == doctest::Approx(0.0));
}

TEST_CASE("gmd decomposition holds across baselines (grid)") {
    auto rng = make_rng(83);
    for (const Baseline& b : {make_uniform(), make_exponential(1.0), make_power(2.0, 3.0)}) {
        CAPTURE(b.name());
        for (int rep = 0; rep < 8; ++rep) {
            const CTParams p = random_valid_params(rng);
            CAPTURE(p.lambda1);
            CAPTURE(p.lambda2);
            const GmdDecomposition d = gmd_ct_decomposed(make_ct(b, p));
            CHECK(std::abs(d.total - d.sum()) < 1e-8);
        }
    }
}

TEST_CASE("gmd rejects heavy-tailed pareto") {
    CHECK_THROWS_AS(gmd_ct_decomposed(make_ct(make_pareto(1.0), {0.4, 0.6})), std::domain_error);
    CHECK_THROWS_AS(gmd_ct_decomposed(make_ct(make_pareto(0.8), {0.4, 0.6})), std::domain_error);
}

TEST_CASE("quadratic-case r_star matches the corrected two-integral form") {
    for (const Baseline& b : {make_uniform(), make_exponential(1.0)}) {
        for (double lambda : {-0.75, -0.25, 0.25, 0.5}) {
            CAPTURE(b.name());
            CAPTURE(lambda);
            const GmdDecomposition d = gmd_ct_decomposed(make_quadratic(b, lambda));
            CHECK(d.r_star == doctest::Approx(rstar_quadratic(b, lambda)).epsilon(1e-8));
        }
    }
}

TEST_CASE("power-baseline closed form") {
    const PowerGmd one = gmd_power_example(2.0, 3.0, {1.0, 1.0});
    CHECK(one.total == doctest::Approx(3.0 / 7.0).epsilon(1e-12));  // 2bc/((c+1)(2c+1))

    auto rng = make_rng(89);
    for (int rep = 0; rep < 10; ++rep) {
        const CTParams p = random_valid_params(rng);
        CAPTURE(p.lambda1);
        CAPTURE(p.lambda2);
        const PowerGmd closed = gmd_power_example(2.0, 3.0, p);
        const GmdDecomposition quad = gmd_ct_decomposed(make_ct(make_power(2.0, 3.0), p));
        CHECK(closed.total == doctest::Approx(quad.total).epsilon(1e-8));
        CHECK(closed.r_star == doctest::Approx(quad.r_star).epsilon(1e-8));
    }

    CHECK(gmd_power_example(2.0, 3.0, {0.4, 0.6}).r_star >= 0.0);
    CHECK(gmd_power_example(2.0, 3.0, {0.9, -0.5}).r_star <= 0.0);
}

TEST_CASE("r_star sign regions on interior grids") {
    for (int i = 0; i < 11; ++i) {
        for (int j = 0; j < 11; ++j) {
            const double fi = (i + 1) / 12.0, fj = (j + 1) / 12.0;
            const double a1 = 0.0 + 0.8 * fi, a2 = 0.2 + 0.8 * fj;
            CHECK(gmd_power_example(2.0, 3.0, {a1, a2}).r_star >= -1e-12);
            const double b1 = 0.8 + 0.2 * fi, b2 = -1.0 + 1.2 * fj;
            CHECK(gmd_power_example(2.0, 3.0, {b1, b2}).r_star <= 1e-12);
        }
    }
}

TEST_CASE("energy distance") {
    const Dist u = unit_uniform_dist();
    CHECK(energy_distance(u, u).value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(energy_distance(u, beta31_dist()).value ==
          doctest::Approx(8.0 / 105.0).epsilon(1e-9));
    CHECK(energy_distance(u, to_dist({OrderStat::med13, make_uniform()})).value ==
          doctest::Approx(1.0 / 210.0).epsilon(1e-8));
}

TEST_CASE("ct gini mean difference, direct value") {
    const CTDistribution ct = make_ct(make_uniform(), {0.4, 0.6});
    // 2 int (0.24u^2 - 0.16u^3 + 0.24u^4 - 0.96u^5 + 0.64u^6) du
    CHECK(ctg(ct) == doctest::Approx(0.038857142857142855).epsilon(1e-8));
    CHECK_THROWS_AS(ctg(make_ct(make_uniform(), {1.0, 1.0})), std::domain_error);
    // degenerate-to-baseline limit vanishes
    CHECK(ctg(make_ct(make_uniform(), {1.0, 1.0 - 1e-7})) ==
          doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("reference energy-distance weights do not reproduce the definition") {
    const CTDistribution ct = make_ct(make_uniform(), {0.4, 0.6});
    const auto via = ctg_via_energy(ct);
    REQUIRE(via.has_value());
    CHECK(std::abs(*via - ctg(ct)) > 1e-3);  // documented in the erratum report

    CHECK_FALSE(ctg_weights({0.5, 0.3}).has_value());
    CHECK_FALSE(ctg_weights_one_param(-0.5).has_value());
}

TEST_CASE("one-parameter weights follow the same reference pattern") {
    const CTDistribution ct = make_one_param_cubic(make_uniform(), -0.25);
    const auto via = ctg_via_energy(ct);
    REQUIRE(via.has_value());
    const auto w = ctg_weights_one_param(-0.25);
    REQUIRE(w.has_value());
    CHECK(w->eta1 == doctest::Approx((3.0 * 0.0625 + 2.0) / 0.5));
}
