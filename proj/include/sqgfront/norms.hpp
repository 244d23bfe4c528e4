//==============================================================================
// norms.hpp
// Discrete Sobolev and Z norms, inner products, and related diagnostics.
// Normalization follows the convention documented in grid.hpp: weighted-l2
// sums over modes carry the Plancherel weight 2*pi*dxi = L, so the s = 0
// Sobolev norm equals the sample L2 norm (dx * sum f_j^2)^{1/2} exactly, and
// the Z norm uses paper-normalized transform values fhat = (L/2pi) c.
//==============================================================================
#pragma once

#include <algorithm>
#include <cmath>

#include "sqgfront/grid.hpp"

namespace sqg {

// H^s norm: ( sum_k (1+xi_k^2)^s |fhat(xi_k)|^2 * (2 pi dxi) )^{1/2}
//         = ( L * sum_k (1+xi_k^2)^s |c_k|^2 )^{1/2}.
inline double sobolev_norm(const SpectralField& f, double s) {
    double acc = 0.0;
    for (std::size_t j = 0; j < f.grid.n_points; ++j) {
        const double xi = f.grid.wavenumber_of_slot(j);
        acc += std::pow(1.0 + xi * xi, s) * std::norm(f.coefficients[j]);
    }
    return std::sqrt(f.grid.domain_length * acc);
}

inline double sobolev_norm(const RealField& f, double s) {
    return sobolev_norm(forward_transform(f), s);
}

// L2 norm of samples, (dx * sum f_j^2)^{1/2}; equals sobolev_norm(.,0).
inline double l2_norm(const RealField& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += v * v;
    return std::sqrt(f.grid.dx() * acc);
}

// L2 pairing <f, g> = dx * sum f_j g_j.
inline double l2_inner(const RealField& f, const RealField& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) acc += f.samples[i] * g.samples[i];
    return f.grid.dx() * acc;
}

// Spectral L2 pairing <f, g> = L * sum_k conj(c_k) d_k (real part); agrees
// with l2_inner for real fields by Plancherel.
inline double l2_inner(const SpectralField& f, const SpectralField& g) {
    complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < f.grid.n_points; ++j)
        acc += std::conj(f.coefficients[j]) * g.coefficients[j];
    return f.grid.domain_length * acc.real();
}

inline double linf_norm(const RealField& f) {
    double m = 0.0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

// Z norm: max over modes of (|xi| + |xi|^{r+3}) |fhat(xi)|, with the
// paper-normalized fhat(xi_k) = (L/2pi) c_k.  Default weight index r = 7.
inline double z_norm(const SpectralField& f, int r = 7) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.grid.n_points; ++j) {
        const double xi = f.grid.wavenumber_of_slot(j);
        if (xi == 0.0) continue;
        const double w = std::abs(xi) + std::pow(std::abs(xi), r + 3);
        m = std::max(m, w * std::abs(f.paper_value(j)));
    }
    return m;
}

}  // namespace sqg
