#include "ctinfo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "ctinfo/rng.hpp"

namespace ctinfo {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Cell {
    double a, b;
    double value;
    double err;
    bool operator<(const Cell& o) const { return err < o.err; }
};

Cell gk15(const std::function<double(double)>& fn, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = fn(mid);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = fn(mid - dx) + fn(mid + dx);
        kron += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

Estimate integrate(const std::function<double(double)>& fn, double a, double b,
                   const QuadratureSpec& spec) {
    Estimate out;
    if (!(b > a)) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Cell> cells;
    Cell first = gk15(fn, a, b);
    out.evaluations = 15;
    cells.push(first);
    double total = first.value;
    double err = first.err;
    std::size_t splits = 0;
    auto tol = [&](double v) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(v)); };
    while (err > tol(total) && splits < spec.max_subdivisions) {
        Cell worst = cells.top();
        if (!std::isfinite(worst.value) || !std::isfinite(worst.err)) break;
        cells.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at double resolution
            cells.push({worst.a, worst.b, worst.value, 0.0});
            err -= worst.err;
            continue;
        }
        Cell left = gk15(fn, worst.a, mid);
        Cell right = gk15(fn, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        cells.push(left);
        cells.push(right);
        ++splits;
    }
    out.value = total;
    out.error_bound = err;
    out.converged = std::isfinite(total) && err <= tol(total);
    return out;
}

Estimate integrate_unit(const std::function<double(double)>& fn, const QuadratureSpec& spec) {
    return integrate(fn, spec.endpoint_eps, 1.0 - spec.endpoint_eps, spec);
}

Estimate integrate_support(const std::function<double(double)>& fn, const Baseline& b,
                           const QuadratureSpec& spec) {
    auto integrand = [&](double u) { return fn(b.quantile(u)) / b.density_at_quantile(u); };
    return integrate_unit(integrand, spec);
}

Estimate mc_expect(const std::function<double(double)>& fn,
                   const std::function<double(std::mt19937_64&)>& sampler,
                   std::size_t n, std::uint64_t seed) {
    Estimate out;
    if (n < 2) return out;
    auto rng = make_rng(seed);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = fn(sampler(rng));
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double var = m2 / static_cast<double>(n - 1);
    out.value = mean;
    out.error_bound = 3.0 * std::sqrt(var / static_cast<double>(n));
    out.evaluations = n;
    out.converged = std::isfinite(mean);
    return out;
}

} // namespace ctinfo
