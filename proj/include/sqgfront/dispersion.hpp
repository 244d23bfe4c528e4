//==============================================================================
// dispersion.hpp
// The linear dispersion relation and resonance geometry of the front equation:
// the trilinear oscillatory phase Phi, stationary (group-velocity) points,
// decay-rate measurement, the resonance sets A_1..A_4, the modified-scattering
// phase Theta, and the scaling-Galilean vector field S = (x+2t) d_x + t d_t.
//==============================================================================
#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqgfront/evolution.hpp"
#include "sqgfront/grid.hpp"
#include "sqgfront/multiplier.hpp"
#include "sqgfront/norms.hpp"
#include "sqgfront/symbols.hpp"

namespace sqg {

//------------------------------------------------------------------------------
// Oscillatory phase of the cubic interaction (0 log 0 := 0):
//   Phi = 2(xi-eta1-eta2)log|xi-eta1-eta2| + 2 eta1 log|eta1|
//       + 2 eta2 log|eta2| - 2 xi log|xi|.
//------------------------------------------------------------------------------
inline double phase_phi(double xi, double eta1, double eta2) {
    using detail::pow_log;  // pow_log(x, 1) = x log|x|, 0 at 0
    return 2.0 * (pow_log(xi - eta1 - eta2, 1) + pow_log(eta1, 1) + pow_log(eta2, 1) -
                  pow_log(xi, 1));
}

//------------------------------------------------------------------------------
// Stationary frequencies of the linear propagator at (x, t):
// solutions of x + 2t(log|xi| + 1) = 0, i.e. xi_0 = +- e^{-1 - x/(2t)}.
//------------------------------------------------------------------------------
inline std::pair<double, double> stationary_point(double x, double t) {
    if (!(t > 0)) throw std::invalid_argument("stationary_point: t must be positive");
    const double xi = std::exp(-1.0 - x / (2.0 * t));
    return {xi, -xi};
}

//------------------------------------------------------------------------------
// Least-squares power-law exponent of value vs t over a window (log-log fit).
//------------------------------------------------------------------------------
inline double decay_fit(const std::vector<std::pair<double, double>>& series,
                        double t_lo, double t_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& [t, v] : series) {
        if (t < t_lo || t > t_hi) continue;
        if (!(t > 0) || !(v > 0))
            throw std::invalid_argument("decay_fit: samples must be positive in the window");
        const double x = std::log(t), y = std::log(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 10) throw std::invalid_argument("decay_fit: need at least 10 samples in the window");
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("decay_fit: degenerate abscissae");
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

//------------------------------------------------------------------------------
// Resonance sets.  With rho(t) = (t+1)^{-0.49} and bound b = (8/5) rho, the
// four parallelograms near the stationary/vanishing configurations of Phi are
// (Delta_i = eta_i - xi/3):
//   A_1 (space resonance, center (xi/3, xi/3)):
//        |2 Delta_1 + Delta_2| < b  and  |Delta_1 + 2 Delta_2| < b
//   A_2 (space-time resonance, center (xi, xi)):
//        |eta_2 - xi| < b  and  |eta_1 - xi| < b
//   A_3 (center (xi, -xi)):
//        |2(eta_1 - xi) + (eta_2 + xi)| < b  and  |eta_1 - xi| < b
//   A_4 (center (-xi, xi)):
//        |eta_2 - xi| < b  and  |(eta_1 + xi) + 2(eta_2 - xi)| < b
//------------------------------------------------------------------------------
inline double resonance_rho(double t) { return std::pow(t + 1.0, -0.49); }

enum class ResonanceTag { none, a1, a2, a3, a4 };

struct ResonanceSets {
    double xi = 0.0;
    double t = 0.0;
    double rho = 0.0;
    double bound = 0.0;   // (8/5) rho
};

inline ResonanceSets resonance_sets(double xi, double t) {
    if (xi == 0.0) throw std::invalid_argument("resonance_sets: xi must be nonzero");
    if (!(t >= 0)) throw std::invalid_argument("resonance_sets: t must be >= 0");
    ResonanceSets s;
    s.xi = xi;
    s.t = t;
    s.rho = resonance_rho(t);
    s.bound = 1.6 * s.rho;
    return s;
}

inline bool in_a1(const ResonanceSets& s, double eta1, double eta2) {
    const double d1 = eta1 - s.xi / 3.0, d2 = eta2 - s.xi / 3.0;
    return std::abs(2.0 * d1 + d2) < s.bound && std::abs(d1 + 2.0 * d2) < s.bound;
}
inline bool in_a2(const ResonanceSets& s, double eta1, double eta2) {
    return std::abs(eta2 - s.xi) < s.bound && std::abs(eta1 - s.xi) < s.bound;
}
inline bool in_a3(const ResonanceSets& s, double eta1, double eta2) {
    return std::abs(2.0 * (eta1 - s.xi) + (eta2 + s.xi)) < s.bound &&
           std::abs(eta1 - s.xi) < s.bound;
}
inline bool in_a4(const ResonanceSets& s, double eta1, double eta2) {
    return std::abs(eta2 - s.xi) < s.bound &&
           std::abs((eta1 + s.xi) + 2.0 * (eta2 - s.xi)) < s.bound;
}

inline ResonanceTag membership(const ResonanceSets& s, double eta1, double eta2) {
    if (in_a1(s, eta1, eta2)) return ResonanceTag::a1;
    if (in_a2(s, eta1, eta2)) return ResonanceTag::a2;
    if (in_a3(s, eta1, eta2)) return ResonanceTag::a3;
    if (in_a4(s, eta1, eta2)) return ResonanceTag::a4;
    return ResonanceTag::none;
}

inline std::string resonance_tag_name(ResonanceTag tag) {
    switch (tag) {
        case ResonanceTag::a1: return "A1";
        case ResonanceTag::a2: return "A2";
        case ResonanceTag::a3: return "A3";
        case ResonanceTag::a4: return "A4";
        default: return "none";
    }
}

//------------------------------------------------------------------------------
// The smooth frequency-comparison cutoff entering the resonance analysis:
//   b(eta1, eta2; xi, rho) = psi((|eta1| - |xi-eta1-eta2|)/rho)
//                          * psi((|eta2| - |xi-eta1-eta2|)/rho).
//------------------------------------------------------------------------------
inline double resonance_cutoff_b(double xi, double eta1, double eta2, double rho) {
    const double e3 = std::abs(xi - eta1 - eta2);
    return psi_cutoff((std::abs(eta1) - e3) / rho) * psi_cutoff((std::abs(eta2) - e3) / rho);
}

//------------------------------------------------------------------------------
// beta_j(xi, t) = (1/6) * integral of b over A_{j+1}, evaluated by tensor
// Gauss-Legendre after an area-preserving affine map of each parallelogram
// onto the square (-bound, bound)^2 (each constraint pair has a unimodular
// coefficient matrix, so the Jacobian is 1).
//------------------------------------------------------------------------------
namespace detail {

template <typename Map>
inline double beta_integral(const ResonanceSets& s, const Map& to_eta, int order_unused = 0) {
    (void)order_unused;
    using gauss = boost::math::quadrature::gauss<double, 16>;
    const auto& absc = gauss::abscissa();   // nonnegative half nodes for [-1, 1]
    const auto& wts = gauss::weights();
    // Expand the half-rule to the full symmetric node set.
    std::vector<double> nodes, w;
    for (std::size_t i = 0; i < absc.size(); ++i) {
        nodes.push_back(absc[i]);
        w.push_back(wts[i]);
        if (absc[i] != 0.0) {
            nodes.push_back(-absc[i]);
            w.push_back(wts[i]);
        }
    }
    const double b = s.bound;
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const auto [e1, e2] = to_eta(b * nodes[i], b * nodes[j]);
            acc += w[i] * w[j] * resonance_cutoff_b(s.xi, e1, e2, s.rho);
        }
    }
    return acc * b * b / 6.0;   // (1/6) * (b dx)(b dy) scaling of [-1,1]^2
}

}  // namespace detail

// beta_1 over A_2, beta_2 over A_3, beta_3 over A_4 (same construction applied
// to each set; the source fixes only the A_2 computation and the symmetric
// rule is applied to the other two).
inline std::array<double, 3> scattering_betas(double xi, double t) {
    const ResonanceSets s = resonance_sets(xi, t);
    const double b1 = detail::beta_integral(
        s, [&](double u, double v) { return std::pair{s.xi + v, s.xi + u}; });
    const double b2 = detail::beta_integral(
        s, [&](double u, double v) { return std::pair{s.xi + v, u - 2.0 * v - s.xi}; });
    const double b3 = detail::beta_integral(
        s, [&](double u, double v) { return std::pair{v - 2.0 * u - s.xi, s.xi + u}; });
    return {b1, b2, b3};
}

//------------------------------------------------------------------------------
// Modified-scattering phase accumulator:
//   Theta(xi, t) = -2 t xi log|xi|
//     + xi * int_0^t [beta_1 T_1(xi,xi,-xi) + beta_2 T_1(xi,-xi,xi)
//                     + beta_3 T_1(-xi,xi,xi)] |phihat(xi,tau)|^2 dtau,
// accumulated by the trapezoid rule over the supplied snapshots;
// |phihat| is the paper-normalized transform value.  T_1 is symmetric, so the
// three T_1 values coincide (= 4 xi^2 log 2); the betas are still computed
// separately over their respective sets.
//------------------------------------------------------------------------------
struct ScatteringPhase {
    FourierGrid grid;
    std::vector<double> theta_nl;         // accumulated nonlinear phase per slot
    double current_t = 0.0;
    double last_tau = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> last_integrand;   // integrand samples at last_tau

    ScatteringPhase() = default;
    explicit ScatteringPhase(const FourierGrid& g)
        : grid(g), theta_nl(g.n_points, 0.0), last_integrand(g.n_points, 0.0) {}

    // Full phase Theta(xi_slot, current_t), linear part included.
    double theta(std::size_t slot) const {
        const double xi = grid.wavenumber_of_slot(slot);
        const double lin = (xi == 0.0) ? 0.0 : -2.0 * current_t * xi * std::log(std::abs(xi));
        return lin + theta_nl[slot];
    }
};

inline ScatteringPhase scattering_phase_update(ScatteringPhase acc, const SpectralField& phat,
                                               double tau, double /*dtau*/ = 0.0) {
    if (!(acc.grid == phat.grid))
        throw std::invalid_argument("scattering_phase_update: grid mismatch");
    if (!std::isnan(acc.last_tau) && !(tau > acc.last_tau))
        throw std::invalid_argument("scattering_phase_update: snapshot times must increase");

    const std::size_t n = acc.grid.n_points;
    std::vector<double> integrand(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = acc.grid.wavenumber_of_slot(j);
        if (xi == 0.0 || j == n / 2) continue;
        const auto betas = scattering_betas(xi, tau);
        const double t1v = t1(xi, xi, -xi);   // == t1(xi,-xi,xi) == t1(-xi,xi,xi)
        const double amp2 = std::norm(phat.paper_value(j));
        integrand[j] = xi * (betas[0] + betas[1] + betas[2]) * t1v * amp2;
    }

    if (!std::isnan(acc.last_tau)) {
        const double h = tau - acc.last_tau;
        for (std::size_t j = 0; j < n; ++j)
            acc.theta_nl[j] += 0.5 * h * (acc.last_integrand[j] + integrand[j]);
    }
    acc.last_tau = tau;
    acc.current_t = tau;
    acc.last_integrand = std::move(integrand);
    return acc;
}

// v-hat = e^{i Theta} phihat; modulus-preserving per mode.
inline SpectralField corrected_profile(const SpectralField& phat, const ScatteringPhase& acc) {
    if (!(acc.grid == phat.grid))
        throw std::invalid_argument("corrected_profile: grid mismatch");
    SpectralField out(phat.grid);
    const std::size_t n = phat.grid.n_points;
    for (std::size_t j = 0; j < n; ++j) {
        const complex phase = (j == n / 2) ? complex(1.0, 0.0)
                                           : std::polar(1.0, acc.theta(j));
        out.coefficients[j] = phat.coefficients[j] * phase;
    }
    return out;
}

//------------------------------------------------------------------------------
// Scaling-Galilean field S phi = (x + 2t) phi_x + t phi_t, with phi_t taken
// from the evolution law phi_t = 2 L phi_x - N(phi).  Also reports the
// residuals of the commutator identities [S, d_x] phi = -d_x phi and
// [S, L] phi = -phi (time slots expanded through the same substitution for
// [S, d_x]; [S, L] is an operator identity, checked on the field as given).
//------------------------------------------------------------------------------
struct ScalingGalileanResult {
    RealField s_phi;
    double hr_norm = 0.0;        // H^r norm of S phi
    double res_comm_dx = 0.0;    // || [S,d_x]phi + d_x phi ||_L2
    double res_comm_l = 0.0;     // || [S,L]phi + phi ||_L2
};

inline ScalingGalileanResult scaling_galilean(const SimState& state, double r = 3.0) {
    const SpectralField phat = profile_to_solution(state);
    const RealField phi = inverse_transform(phat);
    const FourierGrid& g = phi.grid;
    const double t = state.t;

    // Centered-x multiplication needs the field confined to the central half.
    const double peak = linf_norm(phi);
    if (peak > 0.0) {
        double margin = 0.0;
        for (std::size_t i = 0; i < g.n_points; ++i)
            if (std::abs(g.x(i)) > 0.25 * g.domain_length)
                margin = std::max(margin, std::abs(phi.samples[i]));
        if (margin > 1e-8 * peak)
            throw std::domain_error(
                "scaling_galilean: field must vanish outside the central half");
    }

    const NonlinearityConfig nl = state.config.nonlinearity();
    auto phi_t_of = [&nl](const RealField& f, const SpectralField& fh) {
        const RealField lin = inverse_transform(apply_ddx_log_abs(fh));  // 2 L f_x / 2
        const RealField nonlin = full_nonlinearity(f, nl);
        RealField out(f.grid);
        for (std::size_t i = 0; i < f.grid.n_points; ++i)
            out.samples[i] = 2.0 * lin.samples[i] - nonlin.samples[i];
        return out;
    };

    auto apply_s = [&g, t](const RealField& f, const RealField& f_t) {
        const RealField fx = inverse_transform(apply_ddx(forward_transform(f)));
        RealField out(g);
        for (std::size_t i = 0; i < g.n_points; ++i)
            out.samples[i] = (g.x(i) + 2.0 * t) * fx.samples[i] + t * f_t.samples[i];
        return out;
    };

    const RealField phi_t = phi_t_of(phi, phat);
    ScalingGalileanResult res{apply_s(phi, phi_t), 0.0, 0.0, 0.0};
    res.hr_norm = sobolev_norm(res.s_phi, r);

    // [S, d_x] phi + d_x phi = S(phi_x) - d_x(S phi) + phi_x.
    {
        const RealField phix = inverse_transform(apply_ddx(phat));
        const RealField phix_t = inverse_transform(apply_ddx(forward_transform(phi_t)));
        const RealField s_phix = apply_s(phix, phix_t);
        const RealField dx_sphi = inverse_transform(apply_ddx(forward_transform(res.s_phi)));
        RealField resid(g);
        for (std::size_t i = 0; i < g.n_points; ++i)
            resid.samples[i] = s_phix.samples[i] - dx_sphi.samples[i] + phix.samples[i];
        res.res_comm_dx = l2_norm(resid);
    }

    // [S, L] phi + phi = S(L phi) - L(S phi) + phi.
    {
        const RealField lphi = inverse_transform(apply_log_abs(phat));
        const RealField lphi_t = inverse_transform(apply_log_abs(forward_transform(phi_t)));
        const RealField s_lphi = apply_s(lphi, lphi_t);
        const RealField l_sphi = inverse_transform(apply_log_abs(forward_transform(res.s_phi)));
        RealField resid(g);
        for (std::size_t i = 0; i < g.n_points; ++i)
            resid.samples[i] = s_lphi.samples[i] - l_sphi.samples[i] + phi.samples[i];
        res.res_comm_l = l2_norm(resid);
    }

    return res;
}

}  // namespace sqg
