#pragma once

#include <string>
#include <vector>

#include "ctinfo/parallel.hpp"
#include "ctinfo/quadrature.hpp"

namespace ctinfo {

/// One closed-form-vs-oracle agreement check aggregated over a grid.
struct CheckRow {
    std::string name;
    std::size_t cells = 0;      // cells actually compared
    std::size_t fallbacks = 0;  // cells skipped (degenerate closed form)
    double max_abs_diff = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// One reference-formula-vs-oracle mismatch, with the measured discrepancy.
struct ErratumRow {
    std::string formula;
    std::string note;
    double max_abs_discrepancy = 0.0;
    std::string worst_at;
};

struct VerifyReport {
    std::vector<CheckRow> agreement;
    std::vector<ErratumRow> errata;
    std::vector<std::string> validated_reference_forms;
    bool all_pass = false;
    double wall_seconds = 0.0;
    int grid_n = 0;
};

/// Runs the full closed-form/oracle matrix on a grid_n x grid_n (l1,l2) grid
/// (excluding l2 = 1 and weight singularities) plus the reference-formula
/// erratum comparisons. Real-branch cells are held to 1e-7, complex-branch
/// cells to 1e-6.
VerifyReport run_verify(int grid_n = 21, ExecMode exec = ExecMode::openmp,
                        const QuadratureSpec& spec = {});

std::string erratum_report_json(const VerifyReport& rep);

/// Plot data for external tools: theta(l1,l2) over the valid grid and the
/// power-baseline R*(l1,l2) at b=2, c=3. CSV columns lambda1,lambda2,value.
std::string theta_grid_csv(int grid_n = 41);
std::string rstar_grid_csv(double b = 2.0, double c = 3.0, int grid_n = 41);

} // namespace ctinfo
