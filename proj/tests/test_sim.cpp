#include <doctest.h>

#include <cmath>

#include "ctinfo/sim.hpp"

using namespace ctinfo;

TEST_CASE("histogram kl estimator basics") {
    // a perfectly uniform sample against the uniform cdf stays near zero
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
    const double self = histogram_kl(grid, [](double u) { return u; }, 20, 0.5);
    CHECK(std::abs(self) < 1e-3);
    // and is far from the triple-max component
    const double other = histogram_kl(grid, [](double u) { return u * u * u; }, 20, 0.5);
    CHECK(other > 0.5);
}

TEST_CASE("degenerate mixture always selects the first component") {
    SimulationConfig cfg;
    cfg.mix = {1.0, 0.0, 0.0};
    cfg.n_list = {200};
    cfg.replications = 50;
    cfg.seed = 3;
    const SimulationReport rep = run_kl_selection(cfg);
    REQUIRE(rep.kl_rows.size() == 1);
    CHECK(rep.kl_rows[0].prop1 == doctest::Approx(1.0));
    CHECK(rep.kl_rows[0].prop2 == doctest::Approx(0.0));
    CHECK(rep.kl_rows[0].prop3 == doctest::Approx(0.0));
}

TEST_CASE("proportions sum to one and kl estimates are nonnegative") {
    SimulationConfig cfg;
    cfg.mix = {0.3, 0.6, 0.1};
    cfg.n_list = {50, 150};
    cfg.replications = 40;
    cfg.seed = 9;
    const SimulationReport rep = run_kl_selection(cfg);
    for (const KlSelectionRow& r : rep.kl_rows) {
        CHECK(r.prop1 + r.prop2 + r.prop3 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.kl1 >= 0.0);
        CHECK(r.kl2 >= 0.0);
        CHECK(r.kl3 >= 0.0);
    }
}

TEST_CASE("largest mixing probability attains the smallest mean kl") {
    const std::vector<MixingProbs> configs = {
        {0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}, {0.1, 0.1, 0.8}, {0.05, 0.9, 0.05}, {0.7, 0.2, 0.1}};
    int ordered = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        SimulationConfig cfg;
        cfg.mix = configs[i];
        cfg.n_list = {300};
        cfg.replications = 60;
        cfg.seed = 100 + i;
        const KlSelectionRow row = run_kl_selection(cfg).kl_rows[0];
        const std::vector<double> kls = {row.kl1, row.kl2, row.kl3};
        const std::vector<double> mix = {cfg.mix.pi1, cfg.mix.pi2, cfg.mix.pi3};
        const auto kmin = std::min_element(kls.begin(), kls.end()) - kls.begin();
        const auto mmax = std::max_element(mix.begin(), mix.end()) - mix.begin();
        if (kmin == mmax) ++ordered;
    }
    CHECK(ordered >= 5 * 95 / 100);
}

TEST_CASE("campaigns are deterministic and identical across execution modes") {
    SimulationConfig cfg;
    cfg.mix = {0.2, 0.5, 0.3};
    cfg.n_list = {100, 250};
    cfg.replications = 30;
    cfg.seed = 77;
    cfg.exec = ExecMode::serial;
    const std::string serial_csv = kl_report_csv(run_kl_selection(cfg));
    const std::string serial_again = kl_report_csv(run_kl_selection(cfg));
    CHECK(serial_csv == serial_again);
    cfg.exec = ExecMode::openmp;
    CHECK(kl_report_csv(run_kl_selection(cfg)) == serial_csv);
}

TEST_CASE("csv headers are pinned") {
    SimulationReport rep;
    rep.kl_rows.push_back({0.9, 0.05, 0.05, 500, 0.1, 0.2, 0.3, 1.0, 0.0, 0.0});
    const std::string csv = kl_report_csv(rep);
    CHECK(csv.rfind("mix1,mix2,mix3,n,KL1,KL2,KL3,prop1,prop2,prop3\n", 0) == 0);

    SimulationReport crep;
    crep.ci_rows.push_back({"lambda1", 0.4, 500, 0.9, 0.35, 0.45, 0.1, 0.91});
    CHECK(ci_report_csv(crep).rfind("param,true,n,level,avg_lo,avg_hi,avg_width,coverage\n", 0) ==
          0);
}

TEST_CASE("ci study: nested levels and deterministic reports") {
    SimulationConfig cfg;
    cfg.model = FitModel::ct_uniform;
    cfg.true_params = {0.4, 0.6};
    cfg.n_list = {150};
    cfg.replications = 12;
    cfg.levels = {0.90, 0.95};
    cfg.seed = 5;
    cfg.exec = ExecMode::serial;
    const SimulationReport rep = run_ci_study(cfg);
    REQUIRE(rep.ci_rows.size() == 4);  // 2 params x 2 levels
    for (const CiRow& r : rep.ci_rows) {
        CHECK(r.coverage >= 0.0);
        CHECK(r.coverage <= 1.0);
        CHECK(r.avg_width >= 0.0);
    }
    // the 95% interval contains the 90% one on average
    const auto find = [&](const std::string& param, double level) {
        for (const CiRow& r : rep.ci_rows)
            if (r.param == param && r.level == level) return r;
        throw std::logic_error("row not found");
    };
    for (const std::string p : {"lambda1", "lambda2"}) {
        CHECK(find(p, 0.95).avg_lo <= find(p, 0.90).avg_lo + 1e-12);
        CHECK(find(p, 0.95).avg_hi >= find(p, 0.90).avg_hi - 1e-12);
    }

    cfg.exec = ExecMode::openmp;
    CHECK(ci_report_csv(run_ci_study(cfg)) == ci_report_csv(rep));
}

TEST_CASE("near-identical mixes are independent configurations") {
    // (0.9,0.05,0.05) and (0.9,0.075,0.025) look alike but must produce
    // different campaign rows
    SimulationConfig a, b;
    a.mix = {0.9, 0.05, 0.05};
    b.mix = {0.9, 0.075, 0.025};
    a.n_list = b.n_list = {300};
    a.replications = b.replications = 100;
    a.seed = b.seed = 42;
    const KlSelectionRow ra = run_kl_selection(a).kl_rows[0];
    const KlSelectionRow rb = run_kl_selection(b).kl_rows[0];
    CHECK(ra.kl2 != rb.kl2);
    CHECK(ra.kl3 != rb.kl3);
}

TEST_CASE("config validation") {
    SimulationConfig cfg;
    cfg.mix = {0.3, 0.3, 0.4};
    cfg.n_list = {};
    CHECK_THROWS_AS(run_kl_selection(cfg), std::invalid_argument);
    cfg.n_list = {100};
    cfg.replications = 0;
    CHECK_THROWS_AS(run_kl_selection(cfg), std::invalid_argument);

    SimulationConfig ci;
    ci.model = FitModel::ct_weibull;
    ci.true_params = {0.4, 0.6};  // missing k
    ci.n_list = {100};
    CHECK_THROWS_AS(run_ci_study(ci), std::invalid_argument);
}
