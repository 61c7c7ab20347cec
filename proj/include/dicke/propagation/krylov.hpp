// krylov.hpp — Lanczos approximation of exp(-i h A) v for Hermitian A

#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dicke/core/hilbert_space.hpp"

namespace dicke {

/// Apply: void(const VectorXcd& in, VectorXcd& out) computing out = A in.
/// Returns false when the Krylov space of size max_dim is too small for tol; v is then untouched.
template <class Apply>
bool lanczos_expm(const Apply& apply, double h, Eigen::VectorXcd& v, int max_dim, double tol) {
    const double beta0 = v.norm();
    if (beta0 == 0.0) return true;
    const Index d = v.size();
    const int m_max = static_cast<int>(std::min<Index>(max_dim, d));

    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(m_max + 1);
    basis.push_back(v / beta0);
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w(d);

    for (int j = 0; j < m_max; ++j) {
        apply(basis[j], w);
        const double a = basis[j].dot(w).real();
        alpha.push_back(a);
        // full reorthogonalization keeps the small basis numerically orthonormal
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) w -= q.dot(w) * q;
        const double b = w.norm();

        const int m = j + 1;
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tri(i, i) = alpha[i];
            if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        const Eigen::VectorXcd phase = (cplx(0.0, -h) * es.eigenvalues().cast<cplx>()).array().exp();
        const Eigen::VectorXcd c = es.eigenvectors().cast<cplx>() *
                                   phase.cwiseProduct(es.eigenvectors().row(0).transpose().cast<cplx>());
        const bool invariant = b <= 1e-13 * std::max(1.0, std::abs(a));
        if (invariant || beta0 * b * h * std::abs(c[m - 1]) < tol) {
            Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
            for (int i = 0; i < m; ++i) out += c[i] * basis[i];
            v = beta0 * out;
            return true;
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }
    return false;
}

} // namespace dicke
