// initial_state.hpp — qubit ground state ⊗ thermal field

#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dicke/core/diagnostics.hpp"
#include "dicke/core/params.hpp"
#include "dicke/core/state.hpp"

namespace dicke {

/// Weight of the untruncated thermal distribution lying at n >= fock_dim.
inline double thermal_tail_weight(double nbar, int fock_dim) {
    if (nbar <= 0.0) return 0.0;
    return std::pow(nbar / (nbar + 1.0), fock_dim);
}

/// |m=-N/2><m=-N/2| ⊗ thermal(nbar), the thermal weights renormalized over the
/// truncated Fock space.  Returns a pure state when nbar == 0.
inline QuantumState initial_state(const HilbertSpace& space, const ModelParams& params) {
    params.validate();
    if (params.n_qubits != space.n_qubits() || params.fock_cutoff != space.fock_dim())
        throw std::invalid_argument("initial_state: params do not match the Hilbert space");

    if (params.nbar == 0.0) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.dim());
        const auto k = space.local_index(space.composite(0, 0));
        if (!k) throw std::invalid_argument("initial_state: |-N/2, 0> lies outside the requested parity sector");
        psi[*k] = 1.0;
        return QuantumState::pure(space, std::move(psi));
    }

    if (!space.is_full())
        throw std::invalid_argument("initial_state: a thermal field needs the full space (it mixes parity sectors)");
    const double tail = thermal_tail_weight(params.nbar, space.fock_dim());
    if (tail > 1e-10) {
        std::ostringstream msg;
        msg << "thermal tail weight beyond the Fock cutoff is " << tail << " (nbar=" << params.nbar
            << ", fock=" << space.fock_dim() << ")";
        warn(msg.str());
    }
    const double ratio = params.nbar / (params.nbar + 1.0);
    Eigen::VectorXd w(space.fock_dim());
    double p = 1.0;
    for (int n = 0; n < space.fock_dim(); ++n, p *= ratio) w[n] = p;
    w /= w.sum();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int n = 0; n < space.fock_dim(); ++n) rho(space.composite(0, n), space.composite(0, n)) = w[n];
    return QuantumState::density(space, std::move(rho));
}

} // namespace dicke
