#include <doctest.h>

#include <cmath>

#include "ctinfo/divergences.hpp"
#include "ctinfo/rng.hpp"

using namespace ctinfo;

namespace {

const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);

CTParams random_valid_params(std::mt19937_64& rng) {
    for (;;) {
        const CTParams p{u01(rng), -1.0 + 2.0 * u01(rng)};
        if (p.is_valid() && p.lambda2 < 0.999) return p;
    }
}

}  // namespace

TEST_CASE("kl basics") {
    const Dist w = beta31_dist();
    CHECK(kl(w, w).value == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(kl(to_dist({OrderStat::med13, make_uniform()}), w).value ==
          doctest::Approx(kLog2).epsilon(1e-9));
    CHECK(kl(w, unit_uniform_dist()).value ==
          doctest::Approx(kLog3 - 2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("kl divergent sentinel on support mismatch") {
    const DivergenceResult r = kl(to_dist(make_exponential(1.0)), to_dist(make_uniform()));
    CHECK(r.divergent());
}

TEST_CASE("closed-form constants are exact") {
    CHECK(kl_closed_form(KlForm::med_to_max, {0.3, 0.2}).value == doctest::Approx(kLog2).epsilon(1e-15));
    CHECK(kl_closed_form(KlForm::max_to_uniform, {0.3, 0.2}).value ==
          doctest::Approx(kLog3 - 2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("closed forms match the oracle at representative points") {
    // real branch, complex branch, lambda2 = 0, negative lambda2
    const std::vector<CTParams> pts = {{0.4, 0.6}, {0.5, 0.25}, {0.5, 0.5}, {1.0, 0.0},
                                       {0.9, -0.5}, {0.1, 0.9}, {0.2, 0.3}};
    for (const CTParams& p : pts) {
        CAPTURE(p.lambda1);
        CAPTURE(p.lambda2);
        for (KlForm f : {KlForm::uniform_to_ct, KlForm::ct_to_uniform, KlForm::med_to_ct,
                         KlForm::ct_to_max, KlForm::max_to_ct}) {
            const DivergenceResult closed = kl_closed_form(f, p);
            const DivergenceResult oracle = kl_form_quadrature(f, p);
            CAPTURE(static_cast<int>(f));
            CHECK(closed.method == Method::closed_form);
            CHECK(closed.value == doctest::Approx(oracle.value).epsilon(1e-7).scale(1.0));
        }
        for (ChiForm f : {ChiForm::ct_to_uniform, ChiForm::uniform_to_ct, ChiForm::max_to_ct}) {
            const DivergenceResult closed = chi_square_closed_form(f, p);
            const DivergenceResult oracle = chi_form_quadrature(f, p);
            CAPTURE(static_cast<int>(f));
            CHECK(closed.method == Method::closed_form);
            CHECK(closed.value == doctest::Approx(oracle.value).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("degenerate lambda2 = 1 falls back to quadrature") {
    const DivergenceResult a = kl_closed_form(KlForm::uniform_to_ct, {1.0, 1.0});
    CHECK(a.method == Method::quadrature);
    CHECK(a.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("kl is asymmetric away from equality") {
    const CTParams p{0.4, 0.6};
    const double ab = kl_closed_form(KlForm::uniform_to_ct, p).value;
    const double ba = kl_closed_form(KlForm::ct_to_uniform, p).value;
    CHECK(std::abs(ab - ba) > 1e-4);
}

TEST_CASE("reduction pairs are free of the parent distribution") {
    const CTParams p{0.4, 0.6};
    for (const Baseline& b : {make_uniform(), make_exponential(1.0), make_pareto(2.0)}) {
        CAPTURE(b.name());
        for (KlPair pair : {KlPair::f_vs_ct, KlPair::ct_vs_f, KlPair::med_vs_ct,
                            KlPair::med_vs_max, KlPair::ct_vs_max, KlPair::max_vs_ct,
                            KlPair::max_vs_f}) {
            const auto [x_route, u_route] = kl_reduction_check(pair, b, p);
            CAPTURE(static_cast<int>(pair));
            CHECK(std::abs(x_route - u_route) < 1e-8);
        }
    }
    const auto [xe, ue] = kl_reduction_check(KlPair::max_vs_f, make_exponential(1.0), p);
    CHECK(xe == doctest::Approx(kLog3 - 2.0 / 3.0).epsilon(1e-8));
    CHECK(ue == doctest::Approx(kLog3 - 2.0 / 3.0).epsilon(1e-8));

    const auto [x0, u0] = kl_reduction_check(KlPair::f_vs_ct, make_uniform(), {1.0, 1.0});
    CHECK(x0 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(u0 == doctest::Approx(0.0).epsilon(1e-9));

    const auto [xp, up] = kl_reduction_check(KlPair::med_vs_max, make_pareto(2.0), p);
    CHECK(xp == doctest::Approx(kLog2).epsilon(1e-8));
    CHECK(up == doctest::Approx(kLog2).epsilon(1e-8));
}

TEST_CASE("jeffreys divergence") {
    const Dist w = beta31_dist();
    const Dist u = unit_uniform_dist();
    CHECK(jeffreys(w, w).value == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(jeffreys(w, u).value == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(jeffreys(w, u).value == doctest::Approx(jeffreys(u, w).value).epsilon(1e-10));

    const CTParams p{0.4, 0.6};
    const double via_forms = kl_closed_form(KlForm::ct_to_max, p).value +
                             kl_closed_form(KlForm::max_to_ct, p).value;
    const double via_quad = jeffreys(ctu_dist(p), w).value;
    CHECK(via_forms == doctest::Approx(via_quad).epsilon(1e-8));

    // x-space Jeffreys between f_CT and f_max reduces to the u-space value
    const Baseline ex = make_exponential(1.0);
    const double x_space =
        jeffreys(to_dist(make_ct(ex, p)), to_dist({OrderStat::max13, ex})).value;
    CHECK(x_space == doctest::Approx(via_quad).epsilon(1e-7));
}

TEST_CASE("mixture kl: identical mixtures vanish") {
    for (double v : {0.25, 0.5, 0.75}) {
        const CTParams p{v, v};
        CHECK(kl_mixture_ct(v, p, MixDirection::mix_to_ct).value ==
              doctest::Approx(0.0).epsilon(1e-10));
        CHECK(kl_mixture_ct(v, p, MixDirection::ct_to_mix).value ==
              doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("mixture kl: endpoint reductions") {
    const CTParams p{0.4, 0.6};
    CHECK(kl_mixture_ct(1.0, p, MixDirection::mix_to_ct).value ==
          doctest::Approx(kl_closed_form(KlForm::uniform_to_ct, p).value).epsilon(1e-12));
    CHECK(kl_mixture_ct(0.0, p, MixDirection::ct_to_mix).value ==
          doctest::Approx(kl_closed_form(KlForm::ct_to_max, p).value).epsilon(1e-12));
}

TEST_CASE("mixture kl closed forms match the oracle") {
    auto rng = make_rng(53);
    auto gmix = [](double v, double u) { return v + 3.0 * (1.0 - v) * u * u; };
    for (int rep = 0; rep < 8; ++rep) {
        const CTParams p = random_valid_params(rng);
        const double v = 0.1 + 0.8 * u01(rng);
        CAPTURE(p.lambda1);
        CAPTURE(p.lambda2);
        CAPTURE(v);
        const double qa = integrate_unit([&](double u) {
                              const double m = gmix(v, u), g = ctu_pdf(p, u);
                              return m * std::log(m / g);
                          }).value;
        const double qb = integrate_unit([&](double u) {
                              const double m = gmix(v, u), g = ctu_pdf(p, u);
                              return g > 0.0 ? g * std::log(g / m) : 0.0;
                          }).value;
        const DivergenceResult a = kl_mixture_ct(v, p, MixDirection::mix_to_ct);
        const DivergenceResult b = kl_mixture_ct(v, p, MixDirection::ct_to_mix);
        if (a.method == Method::closed_form) CHECK(std::abs(a.value - qa) < 1e-7);
        if (b.method == Method::closed_form) CHECK(std::abs(b.value - qb) < 1e-7);
    }
    const DivergenceResult spot = kl_mixture_ct(0.5, {0.5, 0.25}, MixDirection::mix_to_ct);
    CHECK(spot.method == Method::closed_form);
}

TEST_CASE("chi-square spot values") {
    const Dist u = unit_uniform_dist();
    CHECK(chi_square(u, u).value == doctest::Approx(0.0).epsilon(1e-10));

    const CTParams half{0.5, 0.5};
    CHECK(chi_square(ctu_dist(half), u).value == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(chi_square_closed_form(ChiForm::ct_to_uniform, half).value ==
          doctest::Approx(0.2).epsilon(1e-12));
    CHECK(chi_square_closed_form(ChiForm::ct_to_uniform, {1.0, 1.0}).value ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chi-square divergent when the ct density vanishes at the origin") {
    CHECK(chi_square_closed_form(ChiForm::uniform_to_ct, {0.0, 0.5}).divergent());
}

TEST_CASE("symmetric chi-square") {
    const Dist u = unit_uniform_dist();
    CHECK(symmetric_chi_square(u, u).value == doctest::Approx(0.0).epsilon(1e-10));

    const CTParams p{0.5, 0.5};
    const double both = chi_square(ctu_dist(p), u).value + chi_square(u, ctu_dist(p)).value;
    CHECK(symmetric_chi_square(ctu_dist(p), u).value == doctest::Approx(both).epsilon(1e-9));

    // psi(f_CT, f) under any baseline equals psi(f_UCT, f_U)
    const CTParams q{0.4, 0.6};
    const double unit_value = symmetric_chi_square(ctu_dist(q), u).value;
    for (const Baseline& b : {make_exponential(1.0), make_pareto(2.0)}) {
        const double x_value =
            symmetric_chi_square(to_dist(make_ct(b, q)), to_dist(b)).value;
        CHECK(std::abs(x_value - unit_value) < 1e-7);
    }
}

TEST_CASE("nonnegativity and identity of indiscernibles on random pairs") {
    auto rng = make_rng(61);
    for (int rep = 0; rep < 100; ++rep) {
        const CTParams a = random_valid_params(rng);
        const CTParams b = random_valid_params(rng);
        const DivergenceResult klv = kl(ctu_dist(a), ctu_dist(b));
        const DivergenceResult chiv = chi_square(ctu_dist(a), ctu_dist(b));
        if (!klv.divergent()) CHECK(klv.value >= 0.0);
        if (!chiv.divergent()) CHECK(chiv.value >= 0.0);
    }
    const CTParams same{0.3, 0.7};
    CHECK(kl(ctu_dist(same), ctu_dist(same)).value == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(chi_square(ctu_dist(same), ctu_dist(same)).value ==
          doctest::Approx(0.0).epsilon(1e-10));
}
