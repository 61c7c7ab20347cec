// spectrum.hpp — even-sector spectral gap by dense diagonalization

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "dicke/core/operators.hpp"

namespace dicke {

inline constexpr Index kDefaultGapDimLimit = 4000;

/// E1 - E0 of H(lambda) restricted to the even parity sector.
inline double spectral_gap(const HilbertSpace& space, const ModelParams& params, double lambda,
                           Index max_dim = kDefaultGapDimLimit) {
    const HilbertSpace even = space.restricted(ParitySector::even);
    if (even.dim() > max_dim)
        throw std::length_error("spectral_gap: even-sector dimension " + std::to_string(even.dim()) +
                                " exceeds the dense limit " + std::to_string(max_dim));
    if (even.dim() < 2) throw std::invalid_argument("spectral_gap: even sector has fewer than two states");
    const Eigen::MatrixXcd h = build_hamiltonian(even, params, lambda).to_dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectral_gap: eigensolver failed");
    return es.eigenvalues()[1] - es.eigenvalues()[0];
}

} // namespace dicke
