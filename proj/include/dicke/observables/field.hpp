// field.hpp — quadrature statistics and field squeezing
//
// Quadratures x = (a + a†)/sqrt2, p = i(a† - a)/sqrt2.  Second moments use the
// normal-ordered forms <x^2> = Re<a^2> + <a†a> + 1/2 (and likewise for p), i.e. the
// untruncated commutator, so the vacuum gives exactly 1/2.

#pragma once

#include <cmath>
#include <stdexcept>

#include "dicke/observables/reduce.hpp"

namespace dicke {

struct FieldMoments {
    cplx a;        // <a>
    cplx a2;       // <a^2>
    double n;      // <a†a>
};

struct QuadratureStats {
    double mean_x, mean_p;
    double var_x, var_p;
    double cov_xp;  // <(xp + px)/2> - <x><p>
};

inline FieldMoments field_moments(const ReducedDensityMatrix& rho_b) {
    if (rho_b.subsystem != Subsystem::field) throw std::invalid_argument("field_moments: expects a field reduction");
    const auto& r = rho_b.matrix;
    FieldMoments m{cplx(0.0), cplx(0.0), 0.0};
    for (Index k = 0; k < r.rows(); ++k) {
        const double kd = static_cast<double>(k);
        m.n += kd * r(k, k).real();
        if (k >= 1) m.a += std::sqrt(kd) * r(k, k - 1);
        if (k >= 2) m.a2 += std::sqrt(kd * (kd - 1.0)) * r(k, k - 2);
    }
    return m;
}

inline QuadratureStats field_quadrature_stats(const ReducedDensityMatrix& rho_b) {
    const auto m = field_moments(rho_b);
    const double sq2 = std::sqrt(2.0);
    QuadratureStats s{};
    s.mean_x = sq2 * m.a.real();
    s.mean_p = sq2 * m.a.imag();
    s.var_x = m.a2.real() + m.n + 0.5 - s.mean_x * s.mean_x;
    s.var_p = -m.a2.real() + m.n + 0.5 - s.mean_p * s.mean_p;
    s.cov_xp = m.a2.imag() - s.mean_x * s.mean_p;
    return s;
}

inline QuadratureStats field_quadrature_stats(const QuantumState& state) {
    return field_quadrature_stats(reduce_to_field(state));
}

/// Minimal principal variance, doubled: Var(x) + Var(p) - sqrt((Var(x)-Var(p))^2 + 4 Cov^2).
inline double field_xi2(const QuadratureStats& s) {
    const double dv = s.var_x - s.var_p;
    return s.var_x + s.var_p - std::sqrt(dv * dv + 4.0 * s.cov_xp * s.cov_xp);
}

/// 1 - xi_b^2; positive for squeezed light.
inline double field_squeezing(const QuadratureStats& s) { return 1.0 - field_xi2(s); }

} // namespace dicke
