#include "ctinfo/ctu_algebra.hpp"

#include <cmath>

namespace ctinfo {

namespace {

constexpr double kDegenerate = 1e-9;   // |1-l2| or |a| below this: treat as linear
constexpr double kDoubleRoot = 1e-7;   // |r| below this: conditioning too poor
constexpr double kImagTol = 1e-9;      // residual imaginary part allowed

bool near_unit_interval(cplx x) {
    return std::abs(x.imag()) < 1e-12 && x.real() > -1e-12 && x.real() < 1.0 + 1e-12;
}

}  // namespace

std::optional<CtuRoots> CtuRoots::make(const CTParams& params) {
    const double l1 = params.lambda1, l2 = params.lambda2;
    if (std::abs(1.0 - l2) < kDegenerate) return std::nullopt;
    CtuRoots out;
    out.r_squared = l1 * l1 + l2 * l2 + l1 * l2 - 3.0 * l1;
    out.real_branch = out.r_squared >= 0.0;
    out.r = std::sqrt(cplx(out.r_squared, 0.0));
    const double denom = 3.0 * (1.0 - l2);
    out.p = (l1 - l2 + out.r) / denom;
    out.q = (l1 - l2 - out.r) / denom;
    return out;
}

cplx log_ratio(cplx x) { return std::log(x / (x - 1.0)); }

cplx log_ratio_term(const std::vector<double>& poly, cplx x) {
    cplx val(0.0, 0.0);
    cplx xp(1.0, 0.0);
    for (double c : poly) {
        val += c * xp;
        xp *= x;
    }
    if (std::abs(val) == 0.0) return {0.0, 0.0};
    if (std::abs(x) < 1e-14) return {0.0, 0.0};  // P(0)=0 limit
    return val * log_ratio(x);
}

std::optional<double> integral_poly_over_quadratic(const std::vector<double>& coeffs,
                                                   double a, double b, double c) {
    if (std::abs(a) < kDegenerate) return std::nullopt;
    const cplx disc = std::sqrt(cplx(b * b - 4.0 * a * c, 0.0));
    if (std::abs(disc) < kDoubleRoot) return std::nullopt;
    const cplx p = (-b + disc) / (2.0 * a);
    const cplx q = (-b - disc) / (2.0 * a);

    // synthetic division: P = Q*g + R1 u + R0
    std::vector<double> work(coeffs);
    if (work.size() < 3) work.resize(3, 0.0);
    const std::size_t n = work.size() - 1;
    std::vector<double> quot(n >= 2 ? n - 1 : 1, 0.0);
    for (std::size_t k = n; k >= 2; --k) {
        const double alpha = work[k] / a;
        quot[k - 2] = alpha;
        work[k] = 0.0;
        work[k - 1] -= alpha * b;
        work[k - 2] -= alpha * c;
    }
    const double R1 = work[1], R0 = work[0];

    double int_quot = 0.0;
    for (std::size_t i = 0; i < quot.size(); ++i)
        int_quot += quot[i] / static_cast<double>(i + 1);

    // residues: a(p-q) = disc
    auto root_term = [&](cplx root) -> std::optional<cplx> {
        const cplx res = R1 * root + R0;
        if (std::abs(res) < 1e-12) return cplx(0.0, 0.0);
        if (near_unit_interval(root)) return std::nullopt;  // genuine singularity in range
        return res * log_ratio(root);
    };
    const auto tp = root_term(p);
    const auto tq = root_term(q);
    if (!tp || !tq) return std::nullopt;
    const cplx total = cplx(int_quot, 0.0) - (*tp - *tq) / disc;
    if (!std::isfinite(total.real())) return std::nullopt;
    if (std::abs(total.imag()) > kImagTol) return std::nullopt;
    return total.real();
}

std::optional<double> integral_poly_over_g(const std::vector<double>& coeffs,
                                           const CTParams& params) {
    const double a = 3.0 * (1.0 - params.lambda2);
    const double b = 2.0 * (params.lambda2 - params.lambda1);
    const double c = params.lambda1;
    return integral_poly_over_quadratic(coeffs, a, b, c);
}

std::optional<double> atanh_over_r(double r_squared, double denom) {
    if (r_squared >= 0.0) {
        const double r = std::sqrt(r_squared);
        if (r < kDoubleRoot) return std::nullopt;
        if (denom == 0.0 || std::abs(r / denom) >= 1.0) return std::nullopt;
        return std::atanh(r / denom) / r;
    }
    const double s = std::sqrt(-r_squared);
    if (s < kDoubleRoot) return std::nullopt;
    return std::atan2(s, denom) / s;
}

} // namespace ctinfo
