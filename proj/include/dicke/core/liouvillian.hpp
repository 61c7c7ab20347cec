// liouvillian.hpp — master-equation superoperator
//
// Vectorization is column stacking: vec(rho)[i + D*j] = rho(i, j), so that
// vec(A rho B) = (B^T ⊗ A) vec(rho).

#pragma once

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "dicke/core/operators.hpp"

namespace dicke {

/// Column-stacking vec(rho).
inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

inline Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Index dim) {
    if (v.size() != dim * dim) throw std::invalid_argument("unvectorize: size mismatch");
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

/// d vec(rho)/dt = L vec(rho) for
///   -i[H, rho] + kappa (nbar+1) (2 a rho a† - {a†a, rho}) + kappa nbar (2 a† rho a - {a a†, rho}).
inline SparseOperator build_liouvillian(const HilbertSpace& space, const ModelParams& params, double lambda) {
    if (params.kappa > 0.0 && !space.is_full())
        throw std::invalid_argument("build_liouvillian: the dissipator mixes parity sectors; use the full space when kappa > 0");
    using M = SparseOperator::Matrix;
    using ColMajor = Eigen::SparseMatrix<cplx>;
    const Index d = space.dim();
    M eye(d, d);
    eye.setIdentity();

    const ColMajor h = build_hamiltonian(space, params, lambda).matrix();
    const ColMajor id = eye;
    ColMajor total = cplx(0.0, -1.0) * (ColMajor(Eigen::kroneckerProduct(id, h)) -
                                        ColMajor(Eigen::kroneckerProduct(ColMajor(h.transpose()), id)));

    if (params.kappa > 0.0) {
        const auto f = build_field_operators(space);
        const ColMajor a = f.a.matrix();
        const ColMajor ad = f.adag.matrix();
        const ColMajor ada = ColMajor(ad * a);
        const ColMajor aad = ColMajor(a * ad);
        auto channel = [&](const ColMajor& jump, const ColMajor& jump_dag, const ColMajor& jdj) {
            // 2 J rho J† - J†J rho - rho J†J
            return ColMajor(2.0 * ColMajor(Eigen::kroneckerProduct(ColMajor(jump_dag.transpose()), jump)) -
                            ColMajor(Eigen::kroneckerProduct(id, jdj)) -
                            ColMajor(Eigen::kroneckerProduct(ColMajor(jdj.transpose()), id)));
        };
        const double down = params.kappa * (params.nbar + 1.0);
        const double up = params.kappa * params.nbar;
        total += cplx(down, 0.0) * channel(a, ad, ada);
        if (up > 0.0) total += cplx(up, 0.0) * channel(ad, a, aad);
    }
    return SparseOperator(M(total));
}

} // namespace dicke
