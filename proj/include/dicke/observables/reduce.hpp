// reduce.hpp — partial traces onto the qubit and field factors

#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "dicke/core/state.hpp"

namespace dicke {

enum class Subsystem { qubits_all, field, qubit_pair };

struct ReducedDensityMatrix {
    Subsystem subsystem;
    Eigen::MatrixXcd matrix;

    double trace() const { return matrix.trace().real(); }
    double purity() const { return (matrix * matrix).trace().real(); }
};

namespace detail {

using RowMajorMatrixXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// psi reshaped as Psi(s, n).
inline Eigen::Map<const RowMajorMatrixXcd> amplitude_grid(const Eigen::VectorXcd& psi, const HilbertSpace& full) {
    return {psi.data(), full.spin_dim(), full.fock_dim()};
}

} // namespace detail

/// rho_q(s, s') = sum_n rho(s n, s' n).
inline ReducedDensityMatrix reduce_to_qubits(const QuantumState& state) {
    const QuantumState st = state.embedded();
    const auto& sp = st.space();
    if (st.is_pure()) {
        auto psi = detail::amplitude_grid(st.vector(), sp);
        return {Subsystem::qubits_all, psi * psi.adjoint()};
    }
    const auto& rho = st.matrix();
    const int nf = sp.fock_dim();
    Eigen::MatrixXcd out(sp.spin_dim(), sp.spin_dim());
    for (int sc = 0; sc < sp.spin_dim(); ++sc)
        for (int sr = 0; sr < sp.spin_dim(); ++sr)
            out(sr, sc) = rho.block(sr * nf, sc * nf, nf, nf).trace();
    return {Subsystem::qubits_all, std::move(out)};
}

/// rho_b(n, n') = sum_s rho(s n, s n').
inline ReducedDensityMatrix reduce_to_field(const QuantumState& state) {
    const QuantumState st = state.embedded();
    const auto& sp = st.space();
    if (st.is_pure()) {
        auto psi = detail::amplitude_grid(st.vector(), sp);
        return {Subsystem::field, psi.transpose() * psi.conjugate()};
    }
    const auto& rho = st.matrix();
    const int nf = sp.fock_dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nf, nf);
    for (int s = 0; s < sp.spin_dim(); ++s) out += rho.block(s * nf, s * nf, nf, nf);
    return {Subsystem::field, std::move(out)};
}

/// Population of the top `levels` Fock states, a truncation diagnostic. The vacuum never counts as tail.
inline double fock_tail_weight(const ReducedDensityMatrix& field, int levels = 4) {
    if (field.subsystem != Subsystem::field) throw std::invalid_argument("fock_tail_weight: expects a field reduction");
    const Index n = field.matrix.rows();
    const Index k = std::min<Index>(levels, n - 1);
    return field.matrix.diagonal().tail(k).real().sum();
}

} // namespace dicke
