//==============================================================================
// symbol_quadrature.hpp
// Independent quadrature evaluation of the multilinear symbols
//   T_n(eta) = \int_R Re prod_j (1 - e^{i eta_j zeta}) / |zeta|^{2n+1} dzeta,
// used as the second path against the closed subset-sum form.
//
// Scheme (split at zeta* = 1/max|eta_j|, mirroring the derivation's split):
//  * (0, zeta*): the integrand is evaluated directly from the complex product;
//    near 0 the real part is O(zeta^{2n+2}) and the absolute rounding error of
//    the product form is O(eps * prod|eta_j|), so no cancellation blow-up.
//    Integrated adaptively (Gauss-Kronrod).
//  * (zeta*, inf): expand Re prod (1-e^{i eta_j zeta}) into the alternating
//    subset-sum cosine form sum_S (-1)^{|S|+1} (1 - cos(s_S zeta)) and reduce
//    each term by u = |s| zeta to  |s|^{2n} K_{2n}(|s| zeta*), where
//        K_m(B) = \int_B^inf (1 - cos u) / u^{m+1} du.
//    K_m is integrated adaptively on (B, 40) and closed with a convergent
//    integration-by-parts series for \int_40^inf cos u / u^k du, so the tail
//    is exact to machine precision instead of truncated.
//==============================================================================
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "sqgfront/symbols.hpp"

namespace sqg {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    bool converged = true;
};

namespace detail {

inline constexpr double kKmSeriesPoint = 40.0;  // switch point for the IBP series

// \int_B^inf cos u / u^k du for B >= ~30, by repeated integration by parts:
//   C_k(B) = -sin(B) B^{-k} + k cos(B) B^{-k-1} - k(k+1) C_{k+2}(B).
// Terms shrink like k(k+1)/B^2 per stage; at B = 40 the series reaches
// ~1e-18 absolute before the factorial growth takes over.
inline double cos_integral_tail(int k, double B) {
    const double s = std::sin(B), c = std::cos(B);
    double sum = 0.0;
    double coef = 1.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    int kk = k;
    for (int iter = 0; iter < 64; ++iter) {
        const double bk = std::pow(B, -kk);
        const double term = coef * (-s * bk + kk * c * bk / B);
        // Asymptotic series: truncate at the smallest term (the remainder is
        // bounded by the first omitted term, ~1e-20 at B = 40).
        const double mag = std::abs(coef) * bk * (1.0 + kk / B);
        if (mag > prev_mag) break;
        sum += term;
        prev_mag = mag;
        coef *= -static_cast<double>(kk) * static_cast<double>(kk + 1);
        kk += 2;
        if (std::abs(coef) * std::pow(B, -kk) < 1e-21) break;
    }
    return sum;
}

// K_m(B) = \int_B^inf (1 - cos u) / u^{m+1} du,  m >= 2 even, B > 0.
inline double K_tail(int m, double B) {
    const double b0 = kKmSeriesPoint;
    // Exact tail beyond max(B, b0):
    const double Bc = std::max(B, b0);
    double k = 1.0 / (m * std::pow(Bc, m)) - cos_integral_tail(m + 1, Bc);
    if (B < b0) {
        // Adaptive middle part; 1 - cos u = 2 sin^2(u/2) avoids cancellation.
        auto f = [m](double u) {
            const double s = std::sin(0.5 * u);
            return 2.0 * s * s / std::pow(u, m + 1);
        };
        double err = 0.0;
        k += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, B, b0, 12, 1e-12, &err);
    }
    return k;
}

}  // namespace detail

inline QuadratureResult t_symbol_quadrature_full(const SymbolQuery& q) {
    q.validate();
    if (q.n > kMaxSymbolDegree)
        throw std::invalid_argument("t_symbol_quadrature: degree capped at n <= 6");
    const int n = q.n;
    const int two_n = 2 * n;

    double eta_max = 0.0;
    for (double e : q.etas) eta_max = std::max(eta_max, std::abs(e));
    if (eta_max == 0.0) return {0.0, 0.0, true};  // some (all) arguments vanish

    const double zeta_star = 1.0 / eta_max;

    // Inner part: 2 * \int_0^{zeta*} Re prod (1 - e^{i eta_j zeta}) / zeta^{2n+1}.
    auto inner = [&](double zeta) {
        std::complex<double> p(1.0, 0.0);
        for (double e : q.etas) {
            const double a = e * zeta;
            // 1 - e^{ia} = 2 sin^2(a/2) - i sin(a): evaluated in a form exact
            // for small a (no 1-cos cancellation).
            const double sh = std::sin(0.5 * a);
            p *= std::complex<double>(2.0 * sh * sh, -std::sin(a));
        }
        return 2.0 * p.real() / std::pow(zeta, two_n + 1);
    };
    double inner_err = 0.0;
    double value = 0.0;
    bool converged = true;
    try {
        value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            inner, 0.0, zeta_star, 14, q.tol, &inner_err);
    } catch (const std::exception&) {
        converged = false;
    }

    // Outer part: 2 * sum_S (-1)^{|S|+1} |s|^{2n} K_{2n}(|s| zeta*).
    double outer = 0.0;
    detail::for_each_subset(q.etas, [&](double s, int size) {
        if (s == 0.0) return;
        const double sign = (size & 1) ? 1.0 : -1.0;  // (-1)^{|S|+1}
        const double sa = std::abs(s);
        outer += sign * std::pow(sa, two_n) * detail::K_tail(two_n, sa * zeta_star);
    });
    value += 2.0 * outer;

    const double scale = std::max(std::abs(value), std::pow(eta_max, two_n));
    if (!(inner_err <= 10.0 * q.tol * scale)) converged = false;
    return {value, inner_err, converged};
}

inline double t_symbol_quadrature(const SymbolQuery& q) {
    const QuadratureResult r = t_symbol_quadrature_full(q);
    if (!r.converged)
        throw std::runtime_error("t_symbol_quadrature: adaptive budget exhausted");
    return r.value;
}

}  // namespace sqg
