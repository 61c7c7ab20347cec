// spin.hpp — collective-spin squeezing and pairwise qubit entanglement

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dicke/core/operators.hpp"
#include "dicke/observables/reduce.hpp"

namespace dicke {

namespace detail {

inline void require_qubit_reduction(const ReducedDensityMatrix& rho_q, const char* what) {
    if (rho_q.subsystem != Subsystem::qubits_all)
        throw std::invalid_argument(std::string(what) + ": expects the collective qubit reduction");
}

inline double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace detail

struct SpinMoments {
    double jz;       // <Jz>
    double jz2;      // <Jz^2>
    cplx jplus2;     // <J+^2>
};

inline SpinMoments spin_moments(const ReducedDensityMatrix& rho_q) {
    detail::require_qubit_reduction(rho_q, "spin_moments");
    const auto& r = rho_q.matrix;
    const int n = static_cast<int>(r.rows()) - 1;
    const double j = 0.5 * n;
    SpinMoments mom{0.0, 0.0, cplx(0.0)};
    for (int s = 0; s <= n; ++s) {
        const double m = s - j;
        const double p = r(s, s).real();
        mom.jz += m * p;
        mom.jz2 += m * m * p;
        if (s + 2 <= n) {
            // J+^2 |s> = c1 c2 |s+2>, so tr(rho J+^2) picks rho(s, s+2)
            const double c = spin_raising_element(j, m) * spin_raising_element(j, m + 1.0);
            mom.jplus2 += c * r(s, s + 2);
        }
    }
    return mom;
}

/// (2/N)(|<J+^2>| + <Jz^2> - N^2/4); equals 1 - xi_q^2 for even-parity symmetric states.
inline double spin_squeezing_even(const ReducedDensityMatrix& rho_q) {
    const auto mom = spin_moments(rho_q);
    const double n = static_cast<double>(rho_q.matrix.rows() - 1);
    return (2.0 / n) * (std::abs(mom.jplus2) + mom.jz2 - 0.25 * n * n);
}

inline double spin_squeezing_even(const QuantumState& state) { return spin_squeezing_even(reduce_to_qubits(state)); }

/// Two-qubit reduction of a symmetric N-qubit state, in the basis
/// |↑↑>, |↑↓>, |↓↑>, |↓↓>.  Uses the split
///   |N/2, m> = sum_q c_q |1, q> ⊗ |(N-2)/2, m-q>,
///   c_q = sqrt(C(2, q+1) C(N-2, m+N/2-q-1) / C(N, m+N/2)).
inline ReducedDensityMatrix two_qubit_reduced_dm(const ReducedDensityMatrix& rho_q) {
    detail::require_qubit_reduction(rho_q, "two_qubit_reduced_dm");
    const auto& r = rho_q.matrix;
    const int n = static_cast<int>(r.rows()) - 1;
    if (n < 2) throw std::invalid_argument("two_qubit_reduced_dm: needs at least two qubits");

    // coeff(k, e): amplitude of |e excitations in the pair> ⊗ |k-e in the rest>, e in {0,1,2}
    auto coeff = [n](int k, int e) -> double {
        const int rest = k - e;
        if (rest < 0 || rest > n - 2) return 0.0;
        return std::exp(0.5 * (detail::log_binomial(2, e) + detail::log_binomial(n - 2, rest) -
                               detail::log_binomial(n, k)));
    };

    // triplet-basis reduction, index e = q+1 = number of excited qubits in the pair
    Eigen::Matrix3cd trip = Eigen::Matrix3cd::Zero();
    for (int k = 0; k <= n; ++k) {
        for (int kp = 0; kp <= n; ++kp) {
            const cplx rkk = r(k, kp);
            if (rkk == cplx(0.0)) continue;
            for (int e = 0; e < 3; ++e) {
                const int ep = e + (kp - k);  // rest excitation count must match
                if (ep < 0 || ep > 2) continue;
                trip(e, ep) += coeff(k, e) * coeff(kp, ep) * rkk;
            }
        }
    }
    const double tr_in = r.trace().real();
    if (std::abs(trip.trace().real() - tr_in) > 1e-9 * std::max(1.0, std::abs(tr_in)))
        throw std::domain_error("two_qubit_reduced_dm: qubit state has support outside the symmetric manifold");

    // triplet -> product basis; |1,1>=|↑↑>, |1,0>=(|↑↓>+|↓↑>)/sqrt2, |1,-1>=|↓↓>
    Eigen::Matrix<cplx, 4, 3> embed = Eigen::Matrix<cplx, 4, 3>::Zero();
    embed(0, 2) = 1.0;
    embed(1, 1) = embed(2, 1) = 1.0 / std::sqrt(2.0);
    embed(3, 0) = 1.0;
    Eigen::MatrixXcd out = embed * trip * embed.adjoint();
    return {Subsystem::qubit_pair, std::move(out)};
}

/// max(0, mu1 - mu2 - mu3 - mu4), mu_i = sqrt(eig(rho (σy⊗σy) rho* (σy⊗σy))) descending.
inline double wootters_concurrence(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = yy(3, 0) = -1.0;
    yy(1, 2) = yy(2, 1) = 1.0;
    const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r, false);
    std::array<double, 4> mu{};
    for (int i = 0; i < 4; ++i) mu[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
    std::sort(mu.begin(), mu.end(), std::greater<>());
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

inline double wootters_concurrence(const ReducedDensityMatrix& pair) {
    if (pair.subsystem != Subsystem::qubit_pair || pair.matrix.rows() != 4)
        throw std::invalid_argument("wootters_concurrence: expects a 4x4 two-qubit density matrix");
    return wootters_concurrence(Eigen::Matrix4cd(pair.matrix));
}

} // namespace dicke
