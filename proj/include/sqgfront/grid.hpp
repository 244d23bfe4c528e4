//==============================================================================
// grid.hpp
// Periodic Fourier grid, real/spectral field value types, and the discrete
// transform pair used everywhere else in the library.
//
// Conventions (fixed once, here):
//  * The domain is the centered interval [-L/2, L/2), x_i = -L/2 + i*dx,
//    dx = L/N.  Wavenumbers are xi_k = 2*pi*k/L for k in {-N/2, ..., N/2-1}.
//  * Spectral coefficients are amplitude coefficients:
//        f(x_j) = sum_k c_k e^{i xi_k x_j},   c_k = (1/N) sum_j f_j e^{-i xi_k x_j}.
//    The continuum transform pair  f(x) = \int fhat(xi) e^{i xi x} dxi,
//    fhat(xi) = (1/2pi) \int f e^{-i xi x} dx  is approximated by
//        fhat(xi_k) = (L / 2pi) c_k.
//    For that pair Plancherel reads \int |f|^2 dx = 2pi \int |fhat|^2 dxi, so
//    the discrete weighted-l2 norms below carry the weight 2pi*dxi = L per
//    mode: sum_k w(xi_k) |fhat(xi_k)|^2 (2pi dxi) = L sum_k w(xi_k) |c_k|^2.
//    With this weight the s=0 Sobolev norm equals the sample L2 norm
//    (dx sum |f_j|^2)^{1/2} exactly.
//  * Coefficient storage follows FFT index order: slot j holds k = j for
//    j < N/2 and k = j - N for j >= N/2; slot N/2 is the Nyquist mode -N/2.
//==============================================================================
#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sqg {

using complex = std::complex<double>;

//------------------------------------------------------------------------------
// FourierGrid: N equispaced points on a length-L periodic interval.
//------------------------------------------------------------------------------
struct FourierGrid {
    std::size_t n_points = 0;   // N, positive and even (power of two recommended)
    double domain_length = 0;   // L > 0

    FourierGrid() = default;
    FourierGrid(std::size_t n, double length)
        : n_points(n), domain_length(length) {
        if (n == 0 || n % 2 != 0)
            throw std::invalid_argument("FourierGrid: n_points must be positive and even");
        if (!(length > 0))
            throw std::invalid_argument("FourierGrid: domain_length must be positive");
    }

    double dx() const { return domain_length / static_cast<double>(n_points); }
    double dxi() const { return 2.0 * std::numbers::pi / domain_length; }

    // Signed integer wavenumber index for storage slot j.
    long long k_of_slot(std::size_t j) const {
        const long long n = static_cast<long long>(n_points);
        const long long jj = static_cast<long long>(j);
        return jj < n / 2 ? jj : jj - n;
    }
    // Wavenumber xi_k = 2 pi k / L for k in {-N/2, ..., N/2-1}.
    double wavenumber(long long k) const { return dxi() * static_cast<double>(k); }
    double wavenumber_of_slot(std::size_t j) const { return wavenumber(k_of_slot(j)); }
    // Storage slot of signed wavenumber index k.
    std::size_t slot_of_k(long long k) const {
        const long long n = static_cast<long long>(n_points);
        return static_cast<std::size_t>(k >= 0 ? k : k + n);
    }

    // Centered spatial node x_i in [-L/2, L/2).
    double x(std::size_t i) const {
        return -0.5 * domain_length + dx() * static_cast<double>(i);
    }

    bool operator==(const FourierGrid& o) const {
        return n_points == o.n_points && domain_length == o.domain_length;
    }
};

//------------------------------------------------------------------------------
// Field value types.
//------------------------------------------------------------------------------
struct RealField {
    FourierGrid grid;
    std::vector<double> samples;   // phi(x_i), length N

    RealField() = default;
    explicit RealField(const FourierGrid& g) : grid(g), samples(g.n_points, 0.0) {}
    RealField(const FourierGrid& g, std::vector<double> v)
        : grid(g), samples(std::move(v)) {
        if (samples.size() != grid.n_points)
            throw std::invalid_argument("RealField: sample count does not match grid");
    }
};

struct SpectralField {
    FourierGrid grid;
    std::vector<complex> coefficients;   // c_k in FFT slot order, length N

    SpectralField() = default;
    explicit SpectralField(const FourierGrid& g)
        : grid(g), coefficients(g.n_points, complex(0.0, 0.0)) {}
    SpectralField(const FourierGrid& g, std::vector<complex> c)
        : grid(g), coefficients(std::move(c)) {
        if (coefficients.size() != grid.n_points)
            throw std::invalid_argument("SpectralField: coefficient count does not match grid");
    }

    // Paper-normalized transform value fhat(xi_k) = (L/2pi) c_k.
    complex paper_value(std::size_t slot) const {
        return coefficients[slot] * (grid.domain_length / (2.0 * std::numbers::pi));
    }
};

//------------------------------------------------------------------------------
// FFT plan cache.  FFTW plan creation is not thread-safe and is expensive;
// plans are created once per size under a mutex and executed with the
// new-array interface on fftw-aligned scratch owned by the caller.
//------------------------------------------------------------------------------
namespace detail {

class FftPlans {
  public:
    static FftPlans& instance() {
        static FftPlans p;
        return p;
    }

    // Executes an in-place c2c transform of size n on data (FFTW sign
    // convention: FFTW_FORWARD applies e^{-i 2pi jk/N}).
    void transform(std::size_t n, complex* data, int sign) {
        fftw_plan plan = nullptr;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_pair(n, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                // Plan on a throwaway aligned buffer; FFTW_ESTIMATE does not
                // overwrite the array but we keep planning off user data anyway.
                fftw_complex* buf = fftw_alloc_complex(n);
                plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                        FFTW_ESTIMATE);
                fftw_free(buf);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }

  private:
    FftPlans() = default;
    ~FftPlans() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

// FFTW requires the execution array to have the same alignment as the planned
// one; std::vector<complex> is not guaranteed 16-byte aligned everywhere, so
// transforms run on a temporary fftw-aligned buffer.
inline void run_fft(std::vector<complex>& data, int sign) {
    const std::size_t n = data.size();
    fftw_complex* buf = fftw_alloc_complex(n);
    auto* cbuf = reinterpret_cast<complex*>(buf);
    for (std::size_t i = 0; i < n; ++i) cbuf[i] = data[i];
    FftPlans::instance().transform(n, cbuf, sign);
    for (std::size_t i = 0; i < n; ++i) data[i] = cbuf[i];
    fftw_free(buf);
}

}  // namespace detail

//------------------------------------------------------------------------------
// Transform pair.
//------------------------------------------------------------------------------
inline SpectralField forward_transform(const RealField& f) {
    SpectralField out(f.grid);
    const std::size_t n = f.grid.n_points;
    // Samples are stored physically from -L/2; the DFT below is phased for
    // x_j = j*dx, so multiply by e^{-i xi_k x_0} afterwards.  Equivalently:
    // c_k = (1/N) sum_j f(x_j) e^{-i xi_k x_j} with x_j = x(j).
    for (std::size_t j = 0; j < n; ++j)
        out.coefficients[j] = complex(f.samples[j], 0.0);
    detail::run_fft(out.coefficients, FFTW_FORWARD);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        // Shift phase from index origin to the centered coordinate origin:
        // e^{-i xi_k x_0} = e^{i pi k} = (-1)^k, exact.
        const double sign = (f.grid.k_of_slot(j) & 1LL) ? -1.0 : 1.0;
        out.coefficients[j] *= inv_n * sign;
    }
    return out;
}

inline RealField inverse_transform(const SpectralField& f) {
    const std::size_t n = f.grid.n_points;
    std::vector<complex> work(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sign = (f.grid.k_of_slot(j) & 1LL) ? -1.0 : 1.0;
        work[j] = f.coefficients[j] * sign;
    }
    detail::run_fft(work, FFTW_BACKWARD);
    RealField out(f.grid);
    for (std::size_t j = 0; j < n; ++j) out.samples[j] = work[j].real();
    return out;
}

// Complex physical samples of a (possibly non-symmetric) spectral field;
// used by diagnostics that need the discarded imaginary part.
inline std::vector<complex> inverse_transform_complex(const SpectralField& f) {
    const std::size_t n = f.grid.n_points;
    std::vector<complex> work(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sign = (f.grid.k_of_slot(j) & 1LL) ? -1.0 : 1.0;
        work[j] = f.coefficients[j] * sign;
    }
    detail::run_fft(work, FFTW_BACKWARD);
    return work;
}

//------------------------------------------------------------------------------
// Small helpers shared across modules.
//------------------------------------------------------------------------------

// Largest deviation from conjugate symmetry c_{-k} = conj(c_k), relative to
// the largest coefficient magnitude (0 for the zero field).
inline double conjugate_symmetry_defect(const SpectralField& f) {
    const std::size_t n = f.grid.n_points;
    double max_c = 0.0, max_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) max_c = std::max(max_c, std::abs(f.coefficients[j]));
    if (max_c == 0.0) return 0.0;
    // Pair k with -k; slots: k and n-k for 1 <= k < n/2; k=0 must be real,
    // the Nyquist slot must be real as well (it is its own conjugate image).
    max_d = std::abs(f.coefficients[0].imag());
    max_d = std::max(max_d, std::abs(f.coefficients[n / 2].imag()));
    for (std::size_t k = 1; k < n / 2; ++k) {
        const complex d = f.coefficients[k] - std::conj(f.coefficients[n - k]);
        max_d = std::max(max_d, std::abs(d));
    }
    return max_d / max_c;
}

// Exact trigonometric evaluation of the field at an arbitrary point x
// (periodic continuation).  O(N) per call; used by the zeta-integral oracle.
inline double evaluate_at(const SpectralField& f, double x) {
    const std::size_t n = f.grid.n_points;
    double acc = f.coefficients[0].real();
    // Nyquist contribution: for a real field the Nyquist coefficient is real
    // and represents c * cos(xi_nyq (x - x_0))-type content; evaluate it as
    // the real part of c * e^{i xi x} like every other mode (half-sum pairing
    // below covers k and -k for 0 < k < N/2).
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double xi = f.grid.wavenumber(static_cast<long long>(k));
        acc += 2.0 * (f.coefficients[k] * std::polar(1.0, xi * x)).real();
    }
    const double xi_nyq = f.grid.wavenumber(-static_cast<long long>(n) / 2);
    acc += (f.coefficients[n / 2] * std::polar(1.0, xi_nyq * x)).real();
    return acc;
}

}  // namespace sqg
