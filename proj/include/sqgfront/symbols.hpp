//==============================================================================
// symbols.hpp
// Exact expansion coefficients c_n and d_{n,l}, the multilinear symbols T_n in
// closed (subset-sum) form, the specialized trilinear symbol T_1 and its
// gradient, and the alternating subset-power cancellation sum.
//
// Closed form (degree index n, 2n+1 frequency arguments):
//   T_n(eta) = 2 (-1)^{n+1} / (2n)! *
//              sum_{l=1}^{2n+1} sum_{m_1<...<m_l} (-1)^l s^{2n} log|s|,
//   s = eta_{m_1}+...+eta_{m_l},  with the removable convention
//   s^{2n} log|s| := 0 at s = 0.
//==============================================================================
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sqg {

// Largest degree index for which subset enumeration (2^{2n+1}-1 terms) is in
// numerical scope.
inline constexpr int kMaxSymbolDegree = 6;

struct SymbolQuery {
    int n = 1;                  // degree index; nonlinearity degree is 2n+1
    std::vector<double> etas;   // eta_1 .. eta_{2n+1}
    double tol = 1e-9;          // quadrature relative tolerance

    void validate() const {
        if (n < 1) throw std::invalid_argument("SymbolQuery: n must be >= 1");
        if (etas.size() != static_cast<std::size_t>(2 * n + 1))
            throw std::invalid_argument("SymbolQuery: need 2n+1 frequency arguments");
        if (!(tol > 0)) throw std::invalid_argument("SymbolQuery: tol must be positive");
    }
};

//------------------------------------------------------------------------------
// Coefficients.
//------------------------------------------------------------------------------

// c_n = sqrt(pi) / (Gamma(1/2-n) Gamma(n+1)), computed by the recurrence
// c_0 = 1, c_n = -c_{n-1} (2n-1)/(2n).  The recurrence follows from
// Gamma(1/2-n) = Gamma(3/2-n)/(1/2-n) and Gamma(n+1) = n Gamma(n); it is
// verified against direct Gamma evaluation for n <= 5 in the test suite.
inline double coeff_c(int n) {
    if (n < 0) throw std::invalid_argument("coeff_c: n must be >= 0");
    double c = 1.0;
    for (int k = 1; k <= n; ++k) c *= -static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
    return c;
}

// d_{n,l} = 2 sqrt(pi) / (|Gamma(1/2-n)| Gamma(l+1) Gamma(2n+2-l) Gamma(n+1))
//         = 2 |c_n| * binom(2n+1, l) / (2n+1)!   for 1 <= l <= 2n+1.
inline double coeff_d(int n, int l) {
    if (n < 1) throw std::invalid_argument("coeff_d: n must be >= 1");
    if (l < 1 || l > 2 * n + 1) throw std::out_of_range("coeff_d: l must be in 1..2n+1");
    // binom(2n+1,l)/(2n+1)! = 1/(l! (2n+1-l)!), accumulated in floating point.
    double denom = 1.0;
    for (int k = 2; k <= l; ++k) denom *= k;
    for (int k = 2; k <= 2 * n + 1 - l; ++k) denom *= k;
    return 2.0 * std::abs(coeff_c(n)) / denom;
}

//------------------------------------------------------------------------------
// Subset-sum helpers.
//------------------------------------------------------------------------------
namespace detail {

// x^p log|x| with the removable value 0 at x = 0 (p >= 1).
inline double pow_log(double x, int p) {
    if (x == 0.0) return 0.0;
    return std::pow(x, p) * std::log(std::abs(x));
}

// Visits every nonempty subset of {0..m-1}; f(sum_of_etas, subset_size).
template <typename F>
inline void for_each_subset(const std::vector<double>& etas, F&& f) {
    const int m = static_cast<int>(etas.size());
    const std::uint64_t end = (1ull << m);
    for (std::uint64_t mask = 1; mask < end; ++mask) {
        double s = 0.0;
        int size = 0;
        for (int j = 0; j < m; ++j)
            if (mask & (1ull << j)) { s += etas[j]; ++size; }
        f(s, size);
    }
}

}  // namespace detail

//------------------------------------------------------------------------------
// cancellation_sum: sum_{l} sum_{m_1<...<m_l} (-1)^l (partial sum)^p, which is
// identically zero for 1 <= p <= N-1 (alternating-subset identity; the zero
// survives only up to floating-point cancellation, which this exposes).
//------------------------------------------------------------------------------
inline double cancellation_sum(int p, const std::vector<double>& etas) {
    const int m = static_cast<int>(etas.size());
    if (m < 2) throw std::invalid_argument("cancellation_sum: need at least 2 arguments");
    if (p < 1 || p > m - 1) throw std::out_of_range("cancellation_sum: need 1 <= p <= N-1");
    double acc = 0.0;
    detail::for_each_subset(etas, [&](double s, int size) {
        const double sign = (size & 1) ? -1.0 : 1.0;
        acc += sign * std::pow(s, p);
    });
    return acc;
}

//------------------------------------------------------------------------------
// T_n closed form.
//------------------------------------------------------------------------------
inline double t_symbol_closed(const SymbolQuery& q) {
    q.validate();
    if (q.n > kMaxSymbolDegree)
        throw std::invalid_argument("t_symbol_closed: degree capped at n <= 6");
    const int n = q.n;
    double acc = 0.0;
    detail::for_each_subset(q.etas, [&](double s, int size) {
        const double sign = (size & 1) ? -1.0 : 1.0;
        acc += sign * detail::pow_log(s, 2 * n);
    });
    double fact = 1.0;  // (2n)!
    for (int k = 2; k <= 2 * n; ++k) fact *= k;
    const double front = 2.0 * ((n & 1) ? 1.0 : -1.0) / fact;  // 2(-1)^{n+1}/(2n)!
    return front * acc;
}

//------------------------------------------------------------------------------
// T_1 specialization: the 7-term trilinear symbol
//   T_1(a,b,c) = -a^2 log|a| - b^2 log|b| - c^2 log|c|
//                - (a+b+c)^2 log|a+b+c|
//                + (a+b)^2 log|a+b| + (a+c)^2 log|a+c| + (b+c)^2 log|b+c|.
//------------------------------------------------------------------------------
inline double t1(double a, double b, double c) {
    using detail::pow_log;
    return -pow_log(a, 2) - pow_log(b, 2) - pow_log(c, 2) - pow_log(a + b + c, 2) +
           pow_log(a + b, 2) + pow_log(a + c, 2) + pow_log(b + c, 2);
}

//------------------------------------------------------------------------------
// Gradient of (eta1, eta2) -> T_1(eta1, eta2, xi - eta1 - eta2):
//   d/d_eta1 = -2 [ eta1 log|eta1| - (eta1+eta2) log|eta1+eta2|
//                   + (xi-eta1) log|xi-eta1| - (xi-eta1-eta2) log|xi-eta1-eta2| ]
// and symmetrically for eta2 (swap eta1 <-> eta2); x log|x| := 0 at x = 0.
//------------------------------------------------------------------------------
inline std::pair<double, double> t1_gradient(double xi, double eta1, double eta2) {
    using detail::pow_log;  // pow_log(x,1) = x log|x|
    const double d1 = -2.0 * (pow_log(eta1, 1) - pow_log(eta1 + eta2, 1) +
                              pow_log(xi - eta1, 1) - pow_log(xi - eta1 - eta2, 1));
    const double d2 = -2.0 * (pow_log(eta2, 1) - pow_log(eta1 + eta2, 1) +
                              pow_log(xi - eta2, 1) - pow_log(xi - eta1 - eta2, 1));
    return {d1, d2};
}

}  // namespace sqg
