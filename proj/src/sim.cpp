#include "ctinfo/sim.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "ctinfo/output.hpp"
#include "ctinfo/rng.hpp"

namespace ctinfo {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

double histogram_kl(std::span<const double> sample, const std::function<double(double)>& cdf,
                    std::size_t bins, double smoothing) {
    std::vector<double> counts(bins, 0.0);
    for (double x : sample) {
        auto b = static_cast<std::size_t>(x * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        counts[b] += 1.0;
    }
    const double n = static_cast<double>(sample.size());
    const double denom = n + smoothing * static_cast<double>(bins);
    double klv = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        const double lo = static_cast<double>(i) / static_cast<double>(bins);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(bins);
        const double p = (counts[i] + smoothing) / denom;
        const double q = std::max(cdf(hi) - cdf(lo), 1e-300);
        klv += p * std::log(p / q);
    }
    return klv;
}

SimulationReport run_kl_selection(const SimulationConfig& cfg) {
    cfg.mix.validate();
    if (cfg.replications < 1 || cfg.n_list.empty())
        throw std::invalid_argument("simulation config requires replications >= 1 and a nonempty n list");
    const auto t0 = clock_type::now();
    const Baseline uni = make_uniform();

    auto cdf_min = [](double u) { const double s = 1.0 - u; return 1.0 - s * s * s; };
    auto cdf_med = [](double u) { return u * u * (3.0 - 2.0 * u); };
    auto cdf_max = [](double u) { return u * u * u; };

    SimulationReport rep;
    rep.study = "kl_selection";
    rep.seed = cfg.seed;
    rep.replications = cfg.replications;

    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        const std::size_t n = cfg.n_list[ni];
        struct PerRep { double k1, k2, k3; int pick; };
        std::vector<PerRep> results(cfg.replications);
        parallel_for(cfg.replications, cfg.exec, [&](std::size_t r) {
            const std::uint64_t s = derive_seed(derive_seed(cfg.seed, ni), r);
            const std::vector<double> data = sample_ct(cfg.mix, uni, n, s);
            PerRep pr{};
            pr.k1 = histogram_kl(data, cdf_min, cfg.histogram_bins, cfg.histogram_smoothing);
            pr.k2 = histogram_kl(data, cdf_med, cfg.histogram_bins, cfg.histogram_smoothing);
            pr.k3 = histogram_kl(data, cdf_max, cfg.histogram_bins, cfg.histogram_smoothing);
            pr.pick = 0;
            if (pr.k2 < pr.k1 && pr.k2 < pr.k3) pr.pick = 1;
            else if (pr.k3 < pr.k1 && pr.k3 < pr.k2) pr.pick = 2;
            results[r] = pr;
        });
        KlSelectionRow row{};
        row.mix1 = cfg.mix.pi1;
        row.mix2 = cfg.mix.pi2;
        row.mix3 = cfg.mix.pi3;
        row.n = n;
        double c1 = 0, c2 = 0, c3 = 0;
        for (const PerRep& pr : results) {  // fixed-order reduction
            row.kl1 += pr.k1;
            row.kl2 += pr.k2;
            row.kl3 += pr.k3;
            (pr.pick == 0 ? c1 : pr.pick == 1 ? c2 : c3) += 1.0;
        }
        const double reps = static_cast<double>(cfg.replications);
        row.kl1 /= reps;
        row.kl2 /= reps;
        row.kl3 /= reps;
        row.prop1 = c1 / reps;
        row.prop2 = c2 / reps;
        row.prop3 = c3 / reps;
        rep.kl_rows.push_back(row);
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

SimulationReport run_ci_study(const SimulationConfig& cfg) {
    if (cfg.replications < 1 || cfg.n_list.empty())
        throw std::invalid_argument("simulation config requires replications >= 1 and a nonempty n list");
    const std::size_t dim = cfg.model == FitModel::ct_uniform ? 2 : 3;
    if (cfg.true_params.size() != dim)
        throw std::invalid_argument("true_params has the wrong dimension for the model");
    const auto t0 = clock_type::now();

    const CTParams truth{cfg.true_params[0], cfg.true_params[1]};
    truth.validate(true);
    const Baseline base = cfg.model == FitModel::ct_uniform ? make_uniform()
                                                            : make_weibull(cfg.true_params[2]);
    const MixingProbs mix{truth.lambda1 / 3.0, truth.lambda2 / 3.0,
                          1.0 - (truth.lambda1 + truth.lambda2) / 3.0};
    mix.validate();

    std::vector<double> box_lo, box_hi;
    fit_parameter_box(cfg.model, box_lo, box_hi);

    SimulationReport rep;
    rep.study = "ci_study";
    rep.seed = cfg.seed;
    rep.replications = cfg.replications;

    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        const std::size_t n = cfg.n_list[ni];
        struct PerRep {
            bool ok = false;
            std::vector<double> est, se;
        };
        std::vector<PerRep> fits(cfg.replications);
        parallel_for(cfg.replications, cfg.exec, [&](std::size_t r) {
            const std::uint64_t s = derive_seed(derive_seed(cfg.seed, ni), r);
            const std::vector<double> data = sample_ct(mix, base, n, s);
            FitOptions opts;
            opts.level = cfg.levels.front();
            try {
                FitResult fr = mle_fit(data, cfg.model, opts);
                if (fr.converged && fr.ci_available) {
                    fits[r].ok = true;
                    fits[r].est = fr.estimates;
                    fits[r].se = fr.se;
                }
            } catch (const std::exception&) {
                // counted below as a failed fit
            }
        });

        std::size_t ok_count = 0;
        for (const PerRep& f : fits) ok_count += f.ok ? 1 : 0;
        rep.failed_fits += cfg.replications - ok_count;

        const std::vector<std::string> names =
            cfg.model == FitModel::ct_uniform ? std::vector<std::string>{"lambda1", "lambda2"}
                                              : std::vector<std::string>{"lambda1", "lambda2", "k"};
        for (double level : cfg.levels) {
            const double z = z_for_level(level);
            for (std::size_t pi = 0; pi < dim; ++pi) {
                CiRow row{};
                row.param = names[pi];
                row.true_value = cfg.true_params[pi];
                row.n = n;
                row.level = level;
                double covered = 0.0;
                for (const PerRep& f : fits) {
                    if (!f.ok) continue;
                    const double lo = std::max(f.est[pi] - z * f.se[pi], box_lo[pi]);
                    const double hi = std::min(f.est[pi] + z * f.se[pi], box_hi[pi]);
                    row.avg_lo += lo;
                    row.avg_hi += hi;
                    row.avg_width += hi - lo;
                    if (lo <= row.true_value && row.true_value <= hi) covered += 1.0;
                }
                if (ok_count > 0) {
                    const double m = static_cast<double>(ok_count);
                    row.avg_lo /= m;
                    row.avg_hi /= m;
                    row.avg_width /= m;
                    row.coverage = covered / m;
                }
                rep.ci_rows.push_back(row);
            }
        }
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

std::string kl_report_csv(const SimulationReport& rep) {
    std::ostringstream os;
    os << "mix1,mix2,mix3,n,KL1,KL2,KL3,prop1,prop2,prop3\n";
    for (const KlSelectionRow& r : rep.kl_rows) {
        os << fmt17(r.mix1) << ',' << fmt17(r.mix2) << ',' << fmt17(r.mix3) << ',' << r.n << ','
           << fmt17(r.kl1) << ',' << fmt17(r.kl2) << ',' << fmt17(r.kl3) << ',' << fmt17(r.prop1)
           << ',' << fmt17(r.prop2) << ',' << fmt17(r.prop3) << '\n';
    }
    return os.str();
}

std::string ci_report_csv(const SimulationReport& rep) {
    std::ostringstream os;
    os << "param,true,n,level,avg_lo,avg_hi,avg_width,coverage\n";
    for (const CiRow& r : rep.ci_rows) {
        os << r.param << ',' << fmt17(r.true_value) << ',' << r.n << ',' << fmt17(r.level) << ','
           << fmt17(r.avg_lo) << ',' << fmt17(r.avg_hi) << ',' << fmt17(r.avg_width) << ','
           << fmt17(r.coverage) << '\n';
    }
    return os.str();
}

} // namespace ctinfo
