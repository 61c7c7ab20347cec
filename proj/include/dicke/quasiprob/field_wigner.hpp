// field_wigner.hpp — Wigner function of the field mode on an x-p grid

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "dicke/core/diagnostics.hpp"
#include "dicke/observables/field.hpp"
#include "dicke/quasiprob/grids.hpp"

namespace dicke {

/// raw: sum_n (-1)^n <n|D†(α) ρ D(α)|n>, so the vacuum peaks at 1.
/// normalized: raw / pi, integrating to one over dx dp.
enum class WignerMode { raw, normalized };

inline const char* to_string(WignerMode m) { return m == WignerMode::raw ? "raw" : "normalized"; }

struct WignerField {
    PlaneGrid grid;
    Eigen::MatrixXd values;  // (x index, p index)
    WignerMode mode{WignerMode::normalized};

    double integral() const {
        double s = 0.0;
        for (int i = 0; i < grid.nx; ++i)
            for (int j = 0; j < grid.np; ++j) s += grid.weight(i, j) * values(i, j);
        return s;
    }
};

/// Raw Wigner value at α = (x + i p)/sqrt(2).
///
/// Sums rho_mn w_mn with the displaced-parity elements w_mn(α) = <n|D(α) Π D†(α)|m>, generated row by row:
///   w_0n = e^{-2|α|²} (2α)^n / sqrt(n!),
///   w_mn = (2 conj(α) w_{m-1,n} - sqrt(n) w_{m-1,n-1}) / sqrt(m)
/// which reproduces (-1)^m sqrt(m!/n!) (2α)^{n-m} L_m^{(n-m)}(4|α|²) e^{-2|α|²} for n >= m
/// without evaluating factorials or Laguerre polynomials directly.
inline double field_wigner_raw_at(const Eigen::MatrixXcd& rho, cplx alpha) {
    const Index dim = rho.rows();
    std::vector<cplx> w(static_cast<std::size_t>(dim));
    w[0] = std::exp(-2.0 * std::norm(alpha));
    double total = rho(0, 0).real() * w[0].real();
    for (Index n = 1; n < dim; ++n) {
        w[n] = 2.0 * alpha * w[n - 1] / std::sqrt(static_cast<double>(n));
        total += 2.0 * (rho(0, n) * w[n]).real();
    }
    // row m overwrites row m-1 in place: w[n] holds w_{m-1,n} until it is replaced
    for (Index m = 1; m < dim; ++m) {
        const double sm = std::sqrt(static_cast<double>(m));
        cplx prev_old = w[m];  // w_{m-1, m}
        w[m] = (2.0 * std::conj(alpha) * prev_old - sm * w[m - 1]) / sm;
        total += (rho(m, m) * w[m]).real();
        for (Index n = m + 1; n < dim; ++n) {
            const cplx next = (2.0 * alpha * w[n - 1] - sm * prev_old) / std::sqrt(static_cast<double>(n));
            prev_old = w[n];
            w[n] = next;
            total += 2.0 * (rho(m, n) * w[n]).real();
        }
    }
    return total;
}

namespace detail {

inline void check_plane_support(const ReducedDensityMatrix& rho_b, const PlaneGrid& grid) {
    const auto s = field_quadrature_stats(rho_b);
    // a Fock-like state spreads over radius sqrt(2n+1); take whichever is wider
    const double ring = std::sqrt(2.0 * field_moments(rho_b).n + 1.0);
    const double hx = std::max(4.0 * std::sqrt(std::max(s.var_x, 0.0)), ring + 2.0);
    const double hp = std::max(4.0 * std::sqrt(std::max(s.var_p, 0.0)), ring + 2.0);
    const double x0 = s.mean_x - hx, x1 = s.mean_x + hx, p0 = s.mean_p - hp, p1 = s.mean_p + hp;
    if (grid.x_min > x0 || grid.x_max < x1 || grid.p_min > p0 || grid.p_max < p1) {
        std::ostringstream os;
        os.precision(3);
        os << "Wigner grid may not cover the state's support; recommended x in [" << x0 << ", " << x1
           << "], p in [" << p0 << ", " << p1 << "]";
        warn(os.str());
    }
}

} // namespace detail

inline WignerField field_wigner(const ReducedDensityMatrix& rho_b, const PlaneGrid& grid,
                                WignerMode mode = WignerMode::normalized) {
    if (rho_b.subsystem != Subsystem::field) throw std::invalid_argument("field_wigner: expects a field reduction");
    grid.validate();
    detail::check_plane_support(rho_b, grid);
    const double tail = fock_tail_weight(rho_b);
    if (tail > 1e-8) warn("field Wigner: Fock-tail population " + std::to_string(tail) + " exceeds 1e-8");

    const double scale = mode == WignerMode::raw ? 1.0 : 1.0 / std::numbers::pi;
    WignerField f{grid, Eigen::MatrixXd(grid.nx, grid.np), mode};
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.np; ++j)
            f.values(i, j) = scale * field_wigner_raw_at(rho_b.matrix, cplx(grid.x(i), grid.p(j)) / std::numbers::sqrt2);
    return f;
}

/// Integral of max(0, -W) over the grid; needs the normalized mode.
inline double negativity_volume(const WignerField& w) {
    if (w.mode != WignerMode::normalized) throw std::invalid_argument("negativity_volume: needs a normalized Wigner field");
    double s = 0.0;
    for (int i = 0; i < w.grid.nx; ++i)
        for (int j = 0; j < w.grid.np; ++j) s += w.grid.weight(i, j) * std::max(0.0, -w.values(i, j));
    return s;
}

enum class CutAxis { along_x, along_p };

/// Dominant fringe wavelength along a grid line, from the FFT peak of the mean-subtracted cut,
/// refined by a parabola through the peak and its neighbours. Returns 0 for a featureless cut.
inline double fringe_wavelength(const WignerField& w, CutAxis axis, int index) {
    const bool along_x = axis == CutAxis::along_x;
    const int n = along_x ? w.grid.nx : w.grid.np;
    if (index < 0 || index >= (along_x ? w.grid.np : w.grid.nx)) throw std::out_of_range("fringe_wavelength: cut index");
    std::vector<double> cut(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) cut[k] = along_x ? w.values(k, index) : w.values(index, k);
    double mean = 0.0;
    for (double v : cut) mean += v;
    mean /= n;
    for (double& v : cut) v -= mean;

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, cut);
    std::vector<double> mag(static_cast<std::size_t>(n / 2 + 1));
    for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(spec[k]);
    std::size_t peak = 1;
    for (std::size_t k = 2; k < mag.size(); ++k)
        if (mag[k] > mag[peak]) peak = k;
    if (mag.size() < 2 || mag[peak] <= 1e-12 * n) return 0.0;
    double kk = static_cast<double>(peak);
    if (peak + 1 < mag.size()) {
        const double a = mag[peak - 1], b = mag[peak], c = mag[peak + 1];
        const double den = a - 2 * b + c;
        if (den < 0) kk += 0.5 * (a - c) / den;
    }
    const double step = along_x ? w.grid.dx() : w.grid.dp();
    return n * step / kk;
}

} // namespace dicke
