//==============================================================================
// multiplier.hpp
// Fourier-multiplier application, the built-in symbols of the front equation,
// the frozen smooth cutoff profiles, and Littlewood-Paley dyadic projections.
//
// Zero-mode convention: the built-in symbols log|xi|, |xi|^s, i xi, and
// i xi log|xi| take the value 0 at xi = 0.  Every occurrence of the log/power
// symbols in the equation is paired with a derivative factor, so the xi = 0
// contribution is analytically absent; the convention makes the operators
// mean-preserving.  Odd symbols additionally zero the (unpaired) Nyquist mode
// to preserve realness.
//==============================================================================
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "sqgfront/grid.hpp"

namespace sqg {

//------------------------------------------------------------------------------
// apply_multiplier
//------------------------------------------------------------------------------
struct MultiplierOptions {
    complex zero_mode_value{0.0, 0.0};  // value used at xi = 0
    bool zero_nyquist = false;          // force the Nyquist slot to 0 (odd symbols)
};

inline SpectralField apply_multiplier(const SpectralField& f,
                                      const std::function<complex(double)>& m,
                                      const MultiplierOptions& opt = {}) {
    SpectralField out(f.grid);
    const std::size_t n = f.grid.n_points;
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = f.grid.wavenumber_of_slot(j);
        complex mv;
        if (xi == 0.0) {
            mv = opt.zero_mode_value;
        } else if (opt.zero_nyquist && j == n / 2) {
            mv = complex(0.0, 0.0);
        } else {
            mv = m(xi);
            if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
                throw std::domain_error("apply_multiplier: non-finite symbol value at xi != 0");
        }
        out.coefficients[j] = f.coefficients[j] * mv;
    }
    return out;
}

//------------------------------------------------------------------------------
// Built-in symbols.  Each helper applies its own zero-mode/Nyquist convention.
//------------------------------------------------------------------------------

// L = log|d/dx|:  fhat -> log|xi| fhat.
inline SpectralField apply_log_abs(const SpectralField& f) {
    return apply_multiplier(f, [](double xi) { return complex(std::log(std::abs(xi)), 0.0); });
}

// |D|^s:  fhat -> |xi|^s fhat  (s > 0).
inline SpectralField apply_abs_pow(const SpectralField& f, double s) {
    return apply_multiplier(f, [s](double xi) { return complex(std::pow(std::abs(xi), s), 0.0); });
}

// d/dx:  fhat -> i xi fhat  (odd: Nyquist zeroed).
inline SpectralField apply_ddx(const SpectralField& f) {
    return apply_multiplier(f, [](double xi) { return complex(0.0, xi); },
                            {.zero_nyquist = true});
}

// L d/dx:  fhat -> i xi log|xi| fhat  (odd: Nyquist zeroed).
inline SpectralField apply_ddx_log_abs(const SpectralField& f) {
    return apply_multiplier(
        f, [](double xi) { return complex(0.0, xi * std::log(std::abs(xi))); },
        {.zero_nyquist = true});
}

// Convenience physical-space wrappers.
inline RealField ddx(const RealField& f) { return inverse_transform(apply_ddx(forward_transform(f))); }
inline RealField log_abs_D(const RealField& f) { return inverse_transform(apply_log_abs(forward_transform(f))); }

//------------------------------------------------------------------------------
// Frozen smooth cutoff profiles.
//
// smoothstep01: the standard C^infinity transition e(u)/(e(u)+e(1-u)) with
// e(u) = exp(-1/u) for u > 0; it rises from 0 at u<=0 to 1 at u>=1.
//
// psi_cutoff:  even, == 1 on [-5/4, 5/4], supported in [-8/5, 8/5].
// chi_cutoff:  even, == 1 on [-3/40, 3/40], supported in [-1/10, 1/10].
// The shapes inside the transition bands are free in the source material;
// these exact profiles are frozen here for reproducibility.
//------------------------------------------------------------------------------
inline double smoothstep01(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

// Even plateau bump: 1 on |u| <= r1, 0 on |u| >= r2.
inline double plateau_bump(double u, double r1, double r2) {
    return 1.0 - smoothstep01((std::abs(u) - r1) / (r2 - r1));
}

inline double psi_cutoff(double u) { return plateau_bump(u, 1.25, 1.6); }
inline double chi_cutoff(double u) { return plateau_bump(u, 3.0 / 40.0, 0.1); }

//------------------------------------------------------------------------------
// Littlewood-Paley pieces built from psi_cutoff:
//   psi_j(xi)     = psi(xi/2^j) - psi(xi/2^{j-1})          (annulus |xi| ~ 2^j)
//   psi_le_j(xi)  = psi(xi/2^j)                            (low block)
//   psi_ge_j(xi)  = 1 - psi(xi/2^{j-1})                    (high block)
//   psi_tilde_j   = psi_{j-1} + psi_j + psi_{j+1}          (fattened annulus)
//------------------------------------------------------------------------------
inline double psi_dyadic(double xi, int j) {
    return psi_cutoff(std::ldexp(xi, -j)) - psi_cutoff(std::ldexp(xi, -(j - 1)));
}
inline double psi_low(double xi, int j) { return psi_cutoff(std::ldexp(xi, -j)); }
inline double psi_high(double xi, int j) { return 1.0 - psi_cutoff(std::ldexp(xi, -(j - 1))); }
inline double psi_tilde(double xi, int j) {
    return psi_dyadic(xi, j - 1) + psi_dyadic(xi, j) + psi_dyadic(xi, j + 1);
}

enum class DyadicKind { annulus, low, high, fattened };

inline SpectralField dyadic_project(const SpectralField& f, int j,
                                    DyadicKind kind = DyadicKind::annulus) {
    SpectralField out(f.grid);
    for (std::size_t s = 0; s < f.grid.n_points; ++s) {
        const double xi = f.grid.wavenumber_of_slot(s);
        double w = 0.0;
        switch (kind) {
            case DyadicKind::annulus:  w = psi_dyadic(xi, j); break;
            case DyadicKind::low:      w = psi_low(xi, j); break;
            case DyadicKind::high:     w = psi_high(xi, j); break;
            case DyadicKind::fattened: w = psi_tilde(xi, j); break;
        }
        out.coefficients[s] = f.coefficients[s] * w;
    }
    return out;
}

// Range of annulus indices j for which psi_j can be nonzero on this grid:
// supp psi_j = {5/4 * 2^{j-1} <= |xi| <= 8/5 * 2^j}.
inline std::pair<int, int> dyadic_range(const FourierGrid& g) {
    const double xi_min = g.dxi();
    const double xi_max = g.dxi() * static_cast<double>(g.n_points / 2);
    const int j_lo = static_cast<int>(std::floor(std::log2(xi_min / 1.6)));
    const int j_hi = static_cast<int>(std::ceil(std::log2(xi_max / 0.625)));
    return {j_lo, j_hi};
}

}  // namespace sqg
