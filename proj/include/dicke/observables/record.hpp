// record.hpp — one time-sample of every scalar observable

#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "dicke/observables/field.hpp"
#include "dicke/observables/spin.hpp"

namespace dicke {

struct ObservableRecord {
    double t{0.0};
    double lambda{0.0};
    double qubit_op{0.0};      // <Jz>/N + 1/2
    double field_op{0.0};      // <a†a>/N
    double spin_sq{0.0};       // 1 - xi_q^2 (even-parity formula, not clipped)
    double concurrence{0.0};   // Wootters c_W of any qubit pair
    double field_sq{0.0};      // 1 - xi_b^2
    double parity{0.0};        // <Pi>
    double purity_qubits{0.0};
    double purity_field{0.0};

    static constexpr std::array<std::string_view, 10> kColumns{
        "t", "lambda", "qubit_op", "field_op", "spin_sq", "concurrence", "field_sq", "parity", "purity_qubits",
        "purity_field"};

    std::array<double, 10> values() const {
        return {t, lambda, qubit_op, field_op, spin_sq, concurrence, field_sq, parity, purity_qubits, purity_field};
    }
};

/// <Pi> evaluated in the product basis.
inline double parity_expectation(const QuantumState& state) {
    const auto& sp = state.space();
    double acc = 0.0;
    for (Index k = 0; k < sp.dim(); ++k) {
        const Index p = sp.product_index(k);
        const double w = state.is_pure() ? std::norm(state.vector()[k]) : state.matrix()(k, k).real();
        acc += parity_of(sp.spin_label(p), sp.fock_label(p)) * w;
    }
    return acc;
}

struct Measurement {
    ObservableRecord record;
    double fock_tail{0.0};  // population of the top four Fock levels
};

/// Expectation values are tr(rho O) / tr(rho), so integrator norm drift does not leak into the observables.
inline Measurement measure_all(const QuantumState& input) {
    QuantumState state = input;
    if (const double tr = state.trace(); tr > 0.0 && tr != 1.0) {
        if (state.is_pure()) state.vector() /= std::sqrt(tr);
        else state.matrix() /= tr;
    }
    const auto rho_q = reduce_to_qubits(state);
    const auto rho_b = reduce_to_field(state);
    const double n = state.space().n_qubits();

    Measurement out;
    auto& rec = out.record;
    rec.t = state.time();
    rec.lambda = state.lambda();
    const auto mom = spin_moments(rho_q);
    rec.qubit_op = mom.jz / n + 0.5;
    rec.spin_sq = (2.0 / n) * (std::abs(mom.jplus2) + mom.jz2 - 0.25 * n * n);
    rec.concurrence = state.space().n_qubits() >= 2 ? wootters_concurrence(two_qubit_reduced_dm(rho_q)) : 0.0;
    const auto stats = field_quadrature_stats(rho_b);
    rec.field_op = field_moments(rho_b).n / n;
    rec.field_sq = field_squeezing(stats);
    rec.parity = parity_expectation(state);
    rec.purity_qubits = rho_q.purity();
    rec.purity_field = rho_b.purity();
    out.fock_tail = fock_tail_weight(rho_b);
    return out;
}

inline ObservableRecord measure(const QuantumState& state) { return measure_all(state).record; }

} // namespace dicke
