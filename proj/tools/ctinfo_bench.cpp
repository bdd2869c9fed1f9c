// Benchmark of the OpenMP campaign kernels against the serial reference.
// Both paths must produce identical results; timings and speedups printed.

#include <chrono>
#include <cstdio>

#include "ctinfo/parallel.hpp"
#include "ctinfo/sim.hpp"
#include "ctinfo/verify.hpp"

using namespace ctinfo;

namespace {

template <typename Fn>
double time_s(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    int mismatches = 0;
    std::printf("threads available: %d\n\n", hardware_threads());
    std::printf("%-34s %10s %10s %8s %s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
                "identical");

    {
        VerifyReport serial_rep, omp_rep;
        const double ts = time_s([&] { serial_rep = run_verify(13, ExecMode::serial); });
        const double tp = time_s([&] { omp_rep = run_verify(13, ExecMode::openmp); });
        bool same = serial_rep.agreement.size() == omp_rep.agreement.size();
        for (std::size_t i = 0; same && i < serial_rep.agreement.size(); ++i)
            same = serial_rep.agreement[i].max_abs_diff == omp_rep.agreement[i].max_abs_diff &&
                   serial_rep.agreement[i].cells == omp_rep.agreement[i].cells;
        std::printf("%-34s %10.3f %10.3f %8.2fx %s\n", "closed-form verify sweep (13x13)", ts, tp,
                    ts / tp, same ? "yes" : "NO");
        mismatches += same ? 0 : 1;
    }

    {
        SimulationConfig cfg;
        cfg.mix = {0.05, 0.05, 0.9};
        cfg.n_list = {500};
        cfg.replications = 500;
        cfg.seed = 42;
        SimulationReport serial_rep, omp_rep;
        cfg.exec = ExecMode::serial;
        const double ts = time_s([&] { serial_rep = run_kl_selection(cfg); });
        cfg.exec = ExecMode::openmp;
        const double tp = time_s([&] { omp_rep = run_kl_selection(cfg); });
        const bool same = kl_report_csv(serial_rep) == kl_report_csv(omp_rep);
        std::printf("%-34s %10.3f %10.3f %8.2fx %s\n", "selection campaign (500 reps)", ts, tp,
                    ts / tp, same ? "yes" : "NO");
        mismatches += same ? 0 : 1;
    }

    {
        SimulationConfig cfg;
        cfg.model = FitModel::ct_uniform;
        cfg.true_params = {0.4, 0.6};
        cfg.n_list = {300};
        cfg.replications = 60;
        cfg.seed = 7;
        cfg.levels = {0.90};
        SimulationReport serial_rep, omp_rep;
        cfg.exec = ExecMode::serial;
        const double ts = time_s([&] { serial_rep = run_ci_study(cfg); });
        cfg.exec = ExecMode::openmp;
        const double tp = time_s([&] { omp_rep = run_ci_study(cfg); });
        const bool same = ci_report_csv(serial_rep) == ci_report_csv(omp_rep);
        std::printf("%-34s %10.3f %10.3f %8.2fx %s\n", "ci campaign (60 fits)", ts, tp, ts / tp,
                    same ? "yes" : "NO");
        mismatches += same ? 0 : 1;
    }
    return mismatches == 0 ? 0 : 1;
}
