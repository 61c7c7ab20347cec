// oracle.hpp — brute-force reference propagation with dense matrix exponentials

#pragma once

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/core/liouvillian.hpp"
#include "dicke/core/state.hpp"
#include "dicke/propagation/schedule.hpp"

namespace dicke {

inline constexpr Index kOraclePureLimit = 256;
inline constexpr Index kOracleDensityLimit = 64;

/// Piecewise-constant λ: each of n_steps substeps uses λ at its midpoint.
/// lambda_of: double(double t).
template <class LambdaOf>
QuantumState dense_oracle_propagate_path(const QuantumState& initial, const ModelParams& params, LambdaOf lambda_of,
                                         double t0, double t1, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("dense oracle: n_steps must be >= 1");
    const auto& space = initial.space();
    const Index d = space.dim();
    if (initial.is_pure() ? d > kOraclePureLimit : d > kOracleDensityLimit)
        throw std::length_error("dense oracle: dimension " + std::to_string(d) + " over the limit");
    if (params.kappa > 0 && initial.is_pure())
        throw std::invalid_argument("dense oracle: kappa > 0 needs a density-matrix initial state");

    const auto parts = build_hamiltonian_parts(space, params);
    const Eigen::MatrixXcd h0 = parts.bare.to_dense();
    const Eigen::MatrixXcd v = parts.coupling.to_dense();
    const double h = (t1 - t0) / n_steps;

    auto unitary = [&](double lambda) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0 + lambda * v);
        const Eigen::VectorXcd ph = (cplx(0.0, -h) * es.eigenvalues().cast<cplx>()).array().exp();
        return Eigen::MatrixXcd(es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint());
    };

    if (initial.is_pure()) {
        Eigen::VectorXcd psi = initial.vector();
        for (int i = 0; i < n_steps; ++i) psi = unitary(lambda_of(t0 + (i + 0.5) * h)) * psi;
        return QuantumState::pure(space, psi, t1, lambda_of(t1));
    }
    Eigen::MatrixXcd rho = initial.matrix();
    for (int i = 0; i < n_steps; ++i) {
        const double lambda = lambda_of(t0 + (i + 0.5) * h);
        if (params.kappa == 0.0) {
            const Eigen::MatrixXcd u = unitary(lambda);
            rho = u * rho * u.adjoint();
        } else {
            const Eigen::MatrixXcd l = build_liouvillian(space, params, lambda).to_dense();
            const Eigen::MatrixXcd prop = (h * l).exp();
            rho = unvectorize(prop * vectorize(rho), d);
        }
    }
    return QuantumState::density(space, rho, t1, lambda_of(t1));
}

/// State at lambda_end of the ramp.
inline QuantumState dense_oracle_propagate(const QuantumState& initial, const ModelParams& params,
                                           const RampSchedule& schedule, int n_steps) {
    schedule.validate();
    return dense_oracle_propagate_path(
        initial, params, [&](double t) { return schedule.lambda_at(t); }, 0.0, schedule.duration(), n_steps);
}

} // namespace dicke
