// agarwal.hpp — multipole expansion and Agarwal-Wigner function of the collective spin

#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dicke/core/diagnostics.hpp"
#include "dicke/observables/reduce.hpp"
#include "dicke/quasiprob/grids.hpp"
#include "dicke/quasiprob/wigner3j.hpp"

namespace dicke {

/// T[l][m + l] for l = 0..N, m = -l..l.
class MultipoleTable {
public:
    explicit MultipoleTable(int lmax) : lmax_(lmax), data_(static_cast<std::size_t>((lmax + 1) * (lmax + 1))) {}
    int lmax() const { return lmax_; }
    cplx& operator()(int l, int m) { return data_[static_cast<std::size_t>(l * l + l + m)]; }
    cplx operator()(int l, int m) const { return data_[static_cast<std::size_t>(l * l + l + m)]; }

private:
    int lmax_;
    std::vector<cplx> data_;
};

/// <T_lm> = sum_{M'} (-1)^(j-M) sqrt(2l+1) (j l j; -M m M') <jM'|rho|jM>, M = M' + m.
inline MultipoleTable multipole_expectations(const ReducedDensityMatrix& rho_q) {
    if (rho_q.subsystem != Subsystem::qubits_all)
        throw std::invalid_argument("multipole_expectations: expects the collective-spin reduction");
    const int n = static_cast<int>(rho_q.matrix.rows()) - 1;
    const double j = 0.5 * n;
    MultipoleTable t(n);
    for (int l = 0; l <= n; ++l) {
        const double norm = std::sqrt(2.0 * l + 1.0);
        for (int m = -l; m <= l; ++m) {
            cplx acc = 0.0;
            for (int sp = std::max(0, -m); sp <= std::min(n, n - m); ++sp) {
                const int s = sp + m;  // row label of the operator element
                const double big_m = s - j, big_mp = sp - j;
                const double w = wigner_3j(j, l, j, -big_m, m, big_mp);
                if (w == 0.0) continue;
                const double phase = (n - s) % 2 ? -1.0 : 1.0;  // (-1)^(j - M), j - M = n - s
                acc += phase * norm * w * rho_q.matrix(sp, s);
            }
            t(l, m) = acc;
        }
    }
    return t;
}

/// Orthonormal associated Legendre functions with the Condon-Shortley phase, out[l][m] for 0 <= m <= l <= lmax,
/// so that Y_lm(theta, phi) = out[l][m] e^{i m phi}.
inline std::vector<std::vector<double>> normalized_legendre(int lmax, double theta) {
    std::vector<std::vector<double>> p(static_cast<std::size_t>(lmax + 1));
    for (int l = 0; l <= lmax; ++l) p[l].assign(static_cast<std::size_t>(l + 1), 0.0);
    const double x = std::cos(theta), s = std::sin(theta);
    p[0][0] = 0.5 / std::sqrt(std::numbers::pi);
    for (int m = 1; m <= lmax; ++m) p[m][m] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * p[m - 1][m - 1];
    for (int m = 0; m < lmax; ++m) p[m + 1][m] = std::sqrt(2.0 * m + 3.0) * x * p[m][m];
    for (int m = 0; m <= lmax; ++m) {
        for (int l = m + 2; l <= lmax; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
            const double b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
            p[l][m] = a * (x * p[l - 1][m] - b * p[l - 2][m]);
        }
    }
    return p;
}

inline cplx spherical_harmonic(int l, int m, double theta, double phi) {
    if (std::abs(m) > l) return 0.0;
    const double v = normalized_legendre(l, theta)[l][std::abs(m)];
    const cplx y = std::polar(v, std::abs(m) * phi);
    return m >= 0 ? y : ((m % 2) ? -std::conj(y) : std::conj(y));
}

struct SphereField {
    SphereGrid grid;
    Eigen::MatrixXd values;  // (theta index, phi index)
    double max_imag_residual{0.0};

    double integral() const {
        double s = 0.0;
        for (int i = 0; i < grid.n_theta(); ++i)
            for (int k = 0; k < grid.n_phi(); ++k) s += grid.weight(i, k) * values(i, k);
        return s;
    }
};

namespace detail {

// c_m(theta) = sum_l T_lm Pbar_l^|m|, with the (-1)^m conj rule folded in for negative m
inline std::vector<cplx> theta_coefficients(const MultipoleTable& t, double theta) {
    const int L = t.lmax();
    const auto p = normalized_legendre(L, theta);
    std::vector<cplx> c(static_cast<std::size_t>(2 * L + 1), 0.0);
    for (int m = -L; m <= L; ++m) {
        const int am = std::abs(m);
        const double sign = (m < 0 && am % 2) ? -1.0 : 1.0;
        cplx acc = 0.0;
        for (int l = am; l <= L; ++l) acc += t(l, m) * p[l][am];
        c[m + L] = sign * acc;
    }
    return c;
}

inline double check_imaginary(cplx w, double& worst) {
    worst = std::max(worst, std::abs(w.imag()));
    return w.real();
}

inline void report_residual(double worst) {
    if (worst > 1e-6) {
        std::ostringstream os;
        os << "Agarwal-Wigner function has imaginary residual " << worst << " (multipole table is not Hermitian)";
        throw std::domain_error(os.str());
    }
    if (worst > 1e-9) warn("Agarwal-Wigner imaginary residual " + std::to_string(worst) + " discarded");
}

} // namespace detail

/// W_q(theta, phi) = sum_lm <T_lm> Y_lm(theta, phi) at one point.
inline double agarwal_wigner_at(const MultipoleTable& t, double theta, double phi) {
    const auto c = detail::theta_coefficients(t, theta);
    const int L = t.lmax();
    cplx w = 0.0;
    for (int m = -L; m <= L; ++m) w += c[m + L] * std::polar(1.0, m * phi);
    double worst = 0.0;
    const double out = detail::check_imaginary(w, worst);
    detail::report_residual(worst);
    return out;
}

inline SphereField agarwal_wigner(const ReducedDensityMatrix& rho_q, const SphereGrid& grid) {
    const auto t = multipole_expectations(rho_q);
    const int L = t.lmax();
    SphereField f{grid, Eigen::MatrixXd(grid.n_theta(), grid.n_phi()), 0.0};
    for (int i = 0; i < grid.n_theta(); ++i) {
        const auto c = detail::theta_coefficients(t, grid.theta(i));
        for (int k = 0; k < grid.n_phi(); ++k) {
            cplx w = 0.0;
            for (int m = -L; m <= L; ++m) w += c[m + L] * std::polar(1.0, m * grid.phi(k));
            f.values(i, k) = detail::check_imaginary(w, f.max_imag_residual);
        }
    }
    detail::report_residual(f.max_imag_residual);
    return f;
}

} // namespace dicke
