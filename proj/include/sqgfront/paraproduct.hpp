//==============================================================================
// paraproduct.hpp
// Weyl paraproducts T_a, the B^log symbol of the front equation, the weighted
// energies E^(s) / Etilde^(s), the operator-norm monitor for T_{B^log}, and
// the [x, L] commutator identity.
//
// Discretization of the Weyl quantization
//   F[T_a f](xi) = sum_eta chi(|xi-eta|/|xi+eta|) atilde(xi-eta, (xi+eta)/2)
//                  fhat(eta),
// with the delta-amplitude convention matching the c_k coefficients (no
// explicit d_eta weight): atilde(zeta, mu) is the amplitude coefficient of the
// x-profile a(., mu) at frequency zeta.  The midpoint mu = (xi+eta)/2 is an
// exact column when the integer indices share parity and is linearly
// interpolated from the two neighbours otherwise; both rules are symmetric
// under (xi, eta) swap, so T_a stays self-adjoint for real symbols.
//==============================================================================
#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "sqgfront/grid.hpp"
#include "sqgfront/multiplier.hpp"
#include "sqgfront/norms.hpp"
#include "sqgfront/symbols.hpp"

namespace sqg {

//------------------------------------------------------------------------------
// SymbolGrid: a(x_i, xi_m) tabulated over the grid nodes and a xi-evaluation
// set; the default evaluation set is the grid's own wavenumbers in storage
// order, which is what the paraproduct needs.
//------------------------------------------------------------------------------
struct SymbolGrid {
    FourierGrid grid;
    std::vector<double> xi_set;                   // evaluation frequencies, length M
    std::vector<std::vector<double>> values;      // values[m][i] = a(x_i, xi_set[m])

    SymbolGrid() = default;
    explicit SymbolGrid(const FourierGrid& g) : grid(g) {
        xi_set.resize(g.n_points);
        for (std::size_t m = 0; m < g.n_points; ++m) xi_set[m] = g.wavenumber_of_slot(m);
        values.assign(g.n_points, std::vector<double>(g.n_points, 0.0));
    }

    void validate() const {
        if (xi_set.size() != values.size())
            throw std::invalid_argument("SymbolGrid: xi_set/values size mismatch");
        for (const auto& col : values) {
            if (col.size() != grid.n_points)
                throw std::invalid_argument("SymbolGrid: column length does not match grid");
            for (double v : col)
                if (!std::isfinite(v)) throw std::invalid_argument("SymbolGrid: non-finite value");
        }
    }

    // Constant symbol a(x, xi) = c.
    static SymbolGrid constant(const FourierGrid& g, double c) {
        SymbolGrid s(g);
        for (auto& col : s.values) std::fill(col.begin(), col.end(), c);
        return s;
    }

    // x-independent symbol a(xi).
    static SymbolGrid multiplier(const FourierGrid& g, const std::vector<double>& a_of_xi) {
        SymbolGrid s(g);
        for (std::size_t m = 0; m < s.values.size(); ++m)
            std::fill(s.values[m].begin(), s.values[m].end(), a_of_xi[m]);
        return s;
    }
};

namespace detail {

// chi(|xi-eta|/|xi+eta|) with the conventions chi(0/0) := 1 (so constant
// symbols give exactly c*Id) and chi(r/0) := 0 for r != 0.
inline double chi_ratio(double xi, double eta) {
    const double num = std::abs(xi - eta), den = std::abs(xi + eta);
    if (den == 0.0) return num == 0.0 ? 1.0 : 0.0;
    return chi_cutoff(num / den);
}

}  // namespace detail

//------------------------------------------------------------------------------
// weyl_paraproduct.  O(N * support) where the chi cutoff restricts |k - m| to
// at most |k + m|/10-ish; worst case O(N^2).
//------------------------------------------------------------------------------
inline SpectralField weyl_paraproduct(const SymbolGrid& a, const SpectralField& f) {
    if (!(a.grid == f.grid))
        throw std::invalid_argument("weyl_paraproduct: symbol and field grids differ");
    if (a.xi_set.size() != a.grid.n_points)
        throw std::invalid_argument("weyl_paraproduct: needs the default xi-evaluation set");
    const FourierGrid& g = a.grid;
    const std::size_t n = g.n_points;
    const long long half = static_cast<long long>(n) / 2;

    // Per-column amplitude spectra atilde(zeta, xi_m).
    std::vector<std::vector<complex>> ahat(n);
    for (std::size_t m = 0; m < n; ++m)
        ahat[m] = forward_transform(RealField(g, a.values[m])).coefficients;

    SpectralField out(g);
    for (long long k = -half; k <= half - 1; ++k) {
        const double xi = g.wavenumber(k);
        complex acc(0.0, 0.0);
        for (long long mm = -half; mm <= half - 1; ++mm) {
            const complex fm = f.coefficients[g.slot_of_k(mm)];
            if (fm == complex(0.0, 0.0)) continue;
            const double eta = g.wavenumber(mm);
            const double chi = detail::chi_ratio(xi, eta);
            if (chi == 0.0) continue;
            const long long dk = k - mm;
            if (dk < -half || dk > half - 1) continue;  // zeta beyond the band
            const std::size_t zslot = g.slot_of_k(dk);
            const long long ksum = k + mm;
            complex atil;
            if ((ksum & 1LL) == 0) {
                const long long mid = ksum / 2;   // |mid| <= half - 1 inside chi support
                atil = ahat[g.slot_of_k(mid)][zslot];
            } else {
                const long long lo = (ksum - 1) / 2, hi = lo + 1;
                atil = 0.5 * (ahat[g.slot_of_k(lo)][zslot] + ahat[g.slot_of_k(hi)][zslot]);
            }
            acc += chi * atil * fm;
        }
        out.coefficients[g.slot_of_k(k)] = acc;
    }
    return out;
}

//------------------------------------------------------------------------------
// B^log symbol:
//   B^log_n[phi](x, xi) = -2 c_n [g_xi(x)]^{2n},
//   g_xi = multiplier chi((2n+1) eta / xi) applied to phi_x,
// summed over 1 <= n <= n_max; the xi = 0 column is set to 0 (the chi argument
// is undefined there and the energy pairing weights that column by the
// mean-free |D|^s phi anyway).
//------------------------------------------------------------------------------
inline SymbolGrid build_blog_symbol(const RealField& phi, int n_max = 1) {
    if (n_max < 1 || n_max > kMaxSymbolDegree)
        throw std::invalid_argument("build_blog_symbol: need 1 <= n_max <= 6");
    const FourierGrid& g = phi.grid;
    SymbolGrid sym(g);
    const SpectralField pxhat = apply_ddx(forward_transform(phi));

    for (std::size_t m = 0; m < g.n_points; ++m) {
        const double xi = sym.xi_set[m];
        if (xi == 0.0) continue;
        for (int n = 1; n <= n_max; ++n) {
            const double scale = static_cast<double>(2 * n + 1) / xi;
            SpectralField filt(g);
            for (std::size_t j = 0; j < g.n_points; ++j) {
                const double eta = g.wavenumber_of_slot(j);
                filt.coefficients[j] = pxhat.coefficients[j] * chi_cutoff(scale * eta);
            }
            const RealField gx = inverse_transform(filt);
            const double w = -2.0 * coeff_c(n);
            for (std::size_t i = 0; i < g.n_points; ++i)
                sym.values[m][i] += w * std::pow(gx.samples[i], 2 * n);
        }
    }
    return sym;
}

//------------------------------------------------------------------------------
// Operator norm of T_{B^log[phi]} by power iteration (T self-adjoint, so the
// iteration converges to the spectral radius = operator norm).
//------------------------------------------------------------------------------
inline double operator_norm_tblog(const RealField& phi, int n_max = 1,
                                  double rel_tol = 1e-6, int max_iter = 500) {
    const SymbolGrid sym = build_blog_symbol(phi, n_max);
    const FourierGrid& g = phi.grid;

    // Deterministic real start field (generic against the top eigenspace).
    std::mt19937_64 rng(0x5b1d9e3fULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealField start(g);
    for (auto& v : start.samples) v = u(rng);
    SpectralField v = forward_transform(start);

    double nv = sobolev_norm(v, 0.0);
    if (nv == 0.0) return 0.0;
    for (auto& c : v.coefficients) c /= nv;

    double sigma = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        SpectralField w = weyl_paraproduct(sym, v);
        const double nw = sobolev_norm(w, 0.0);
        if (nw < 1e-300) return 0.0;  // T ~ 0 on the start vector
        const double prev = sigma;
        sigma = nw;
        for (auto& c : w.coefficients) c /= nw;
        v = std::move(w);
        if (it > 2 && std::abs(sigma - prev) <= rel_tol * sigma) return sigma;
    }
    throw std::runtime_error("operator_norm_tblog: power iteration did not converge");
}

//------------------------------------------------------------------------------
// Weighted energies E^(s) = <|D|^s phi, (2 - T_{B^log})^{2s+1} |D|^s phi> and
// Etilde^(s) = sum_{j<=s} E^(j).
//------------------------------------------------------------------------------
struct EnergyReport {
    std::vector<double> e;       // e[j] = E^(j), j = 0..s
    double e_tilde = 0.0;        // sum of e[j]
    double tblog_norm = 0.0;     // ||T_{B^log}|| estimate used for the precondition
};

inline EnergyReport weighted_energy_report(const RealField& phi, int s, int n_max = 1) {
    if (s < 0 || s > 8)
        throw std::invalid_argument("weighted_energy: need 0 <= s <= 8");
    EnergyReport rep;
    rep.tblog_norm = operator_norm_tblog(phi, n_max);
    if (rep.tblog_norm >= 2.0)
        throw std::domain_error("weighted_energy: ||T_Blog|| >= 2, energy not positive-definite");

    const SymbolGrid sym = build_blog_symbol(phi, n_max);
    const SpectralField phat = forward_transform(phi);
    for (int j = 0; j <= s; ++j) {
        // |D|^0 is the identity; for j >= 1 the multiplier zeroes the mean mode.
        const SpectralField v = (j == 0) ? phat : apply_abs_pow(phat, static_cast<double>(j));
        SpectralField w = v;
        for (int it = 0; it < 2 * j + 1; ++it) {
            SpectralField tw = weyl_paraproduct(sym, w);
            for (std::size_t i = 0; i < w.coefficients.size(); ++i)
                w.coefficients[i] = 2.0 * w.coefficients[i] - tw.coefficients[i];
        }
        rep.e.push_back(l2_inner(v, w));
        rep.e_tilde += rep.e.back();
    }
    return rep;
}

inline double weighted_energy(const RealField& phi, int s, int n_max = 1) {
    return weighted_energy_report(phi, s, n_max).e.back();
}

//------------------------------------------------------------------------------
// [x, L] commutator: returns (x L f - L(x f), field with transform i fhat/xi).
// With the synthesis convention f = sum c_k e^{i xi_k x}, multiplication by x
// acts as +i d/dxi on the spectrum, so [x, L] has the multiplier
// i d/dxi log|xi| = i/xi.  Requires f mean-free and supported in the central
// half of the domain, since multiplication by the centered coordinate is not
// periodic.
//------------------------------------------------------------------------------
inline std::pair<RealField, RealField> commutator_xL(const RealField& f) {
    const FourierGrid& g = f.grid;
    const SpectralField fhat = forward_transform(f);

    const double peak = linf_norm(f);
    if (peak > 0.0) {
        if (std::abs(fhat.coefficients[0]) > 1e-10 * peak)
            throw std::domain_error("commutator_xL: field must be mean-free");
        double margin = 0.0;
        for (std::size_t i = 0; i < g.n_points; ++i)
            if (std::abs(g.x(i)) > 0.25 * g.domain_length)
                margin = std::max(margin, std::abs(f.samples[i]));
        if (margin > 1e-8 * peak)
            throw std::domain_error("commutator_xL: field must vanish outside the central half");
    }

    const RealField lf = inverse_transform(apply_log_abs(fhat));
    RealField xf(g);
    for (std::size_t i = 0; i < g.n_points; ++i) xf.samples[i] = g.x(i) * f.samples[i];
    const RealField lxf = inverse_transform(apply_log_abs(forward_transform(xf)));

    RealField lhs(g);
    for (std::size_t i = 0; i < g.n_points; ++i)
        lhs.samples[i] = g.x(i) * lf.samples[i] - lxf.samples[i];
    // The true zero mode of [x, L] f is the removable limit of i fhat(xi)/xi
    // at xi = 0, which the discrete multiplier cannot represent; both sides
    // are compared mean-free.
    double mean = 0.0;
    for (double v : lhs.samples) mean += v;
    mean /= static_cast<double>(g.n_points);
    for (double& v : lhs.samples) v -= mean;

    const SpectralField pred = apply_multiplier(
        fhat, [](double xi) { return complex(0.0, 1.0 / xi); }, {.zero_nyquist = true});
    return {lhs, inverse_transform(pred)};
}

}  // namespace sqg
