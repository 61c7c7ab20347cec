// operators.hpp — collective spin, field, Hamiltonian and parity operators
//
// All operators act on the spin-major product basis of HilbertSpace.  Parity-odd
// operators (Jx, J±, a, a†) are only defined on the unrestricted space; the
// Hamiltonian and parity operator can be built on a parity sector directly.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dicke/core/hilbert_space.hpp"
#include "dicke/core/params.hpp"
#include "dicke/core/sparse_operator.hpp"

namespace dicke {

/// <j, m+1| J+ |j, m>.
inline double spin_raising_element(double j, double m) {
    const double v = j * (j + 1.0) - m * (m + 1.0);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

struct SpinOperators {
    SparseOperator Jx, Jz, Jplus, Jminus;
};

struct FieldOperators {
    SparseOperator a, adag, number;
};

namespace detail {

inline void require_full(const HilbertSpace& space, const char* what) {
    if (!space.is_full())
        throw std::invalid_argument(std::string(what) + " requires the unrestricted product space");
}

/// Adds an entry if both product indices survive the sector restriction.
inline void push_local(const HilbertSpace& space, std::vector<SparseOperator::Entry>& out, Index prow, Index pcol,
                       cplx value) {
    if (value == cplx(0.0, 0.0)) return;
    auto r = space.local_index(prow);
    auto c = space.local_index(pcol);
    if (r && c) out.push_back({*r, *c, value});
}

} // namespace detail

inline SpinOperators build_spin_operators(const HilbertSpace& space) {
    detail::require_full(space, "build_spin_operators");
    const double j = space.j();
    const Index d = space.dim();
    std::vector<SparseOperator::Entry> jz, jp, jm, jx;
    for (int s = 0; s <= space.n_qubits(); ++s) {
        const double m = space.m_of(s);
        const double up = spin_raising_element(j, m);
        for (int n = 0; n < space.fock_dim(); ++n) {
            const Index i = space.composite(s, n);
            if (m != 0.0) jz.push_back({i, i, m});
            if (s < space.n_qubits()) {
                const Index k = space.composite(s + 1, n);
                jp.push_back({k, i, up});
                jm.push_back({i, k, up});
                jx.push_back({k, i, 0.5 * up});
                jx.push_back({i, k, 0.5 * up});
            }
        }
    }
    return {SparseOperator::from_entries(d, d, jx, true), SparseOperator::from_entries(d, d, jz, true),
            SparseOperator::from_entries(d, d, jp), SparseOperator::from_entries(d, d, jm)};
}

inline FieldOperators build_field_operators(const HilbertSpace& space) {
    detail::require_full(space, "build_field_operators");
    const Index d = space.dim();
    std::vector<SparseOperator::Entry> a, ad, num;
    for (int s = 0; s <= space.n_qubits(); ++s) {
        for (int n = 0; n < space.fock_dim(); ++n) {
            const Index i = space.composite(s, n);
            if (n > 0) {
                const double amp = std::sqrt(static_cast<double>(n));
                a.push_back({i - 1, i, amp});
                ad.push_back({i, i - 1, amp});
                num.push_back({i, i, static_cast<double>(n)});
            }
        }
    }
    return {SparseOperator::from_entries(d, d, a), SparseOperator::from_entries(d, d, ad),
            SparseOperator::from_entries(d, d, num, true)};
}

/// H(lambda) = bare + lambda * coupling, with
///   bare     = epsilon Jz + omega a†a
///   coupling = (2/sqrt(N)) Jx (a† + a)
struct HamiltonianParts {
    SparseOperator bare;
    SparseOperator coupling;

    SparseOperator at(double lambda) const { return bare + lambda * coupling; }
};

inline HamiltonianParts build_hamiltonian_parts(const HilbertSpace& space, const ModelParams& params) {
    if (params.n_qubits != space.n_qubits())
        throw std::invalid_argument("build_hamiltonian: params.n_qubits does not match the space");
    const double j = space.j();
    const double g = 2.0 / std::sqrt(static_cast<double>(space.n_qubits()));
    std::vector<SparseOperator::Entry> bare, coup;
    for (int s = 0; s <= space.n_qubits(); ++s) {
        const double m = space.m_of(s);
        const double jx_up = 0.5 * spin_raising_element(j, m);  // <s+1|Jx|s>
        for (int n = 0; n < space.fock_dim(); ++n) {
            const Index i = space.composite(s, n);
            detail::push_local(space, bare, i, i, params.epsilon * m + params.omega * n);
            if (s < space.n_qubits() && n + 1 < space.fock_dim()) {
                // <s+1, n+1| and <s+1, n-1| plus their Hermitian partners
                const double x_up = std::sqrt(static_cast<double>(n + 1));
                const Index k = space.composite(s + 1, n + 1);
                detail::push_local(space, coup, k, i, g * jx_up * x_up);
                detail::push_local(space, coup, i, k, g * jx_up * x_up);
            }
            if (s < space.n_qubits() && n > 0) {
                const double x_dn = std::sqrt(static_cast<double>(n));
                const Index k = space.composite(s + 1, n - 1);
                detail::push_local(space, coup, k, i, g * jx_up * x_dn);
                detail::push_local(space, coup, i, k, g * jx_up * x_dn);
            }
        }
    }
    const Index d = space.dim();
    return {SparseOperator::from_entries(d, d, bare, true), SparseOperator::from_entries(d, d, coup, true)};
}

/// H = epsilon Jz + omega a†a + (2 lambda / sqrt(N)) Jx (a† + a).
inline SparseOperator build_hamiltonian(const HilbertSpace& space, const ModelParams& params, double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("build_hamiltonian: lambda must be >= 0");
    return build_hamiltonian_parts(space, params).at(lambda);
}

/// Pi = (-1)^(Jz + N/2 + a†a), diagonal in the product basis.
inline SparseOperator build_parity_operator(const HilbertSpace& space) {
    Eigen::VectorXcd d(space.dim());
    for (Index k = 0; k < space.dim(); ++k) {
        const Index p = space.product_index(k);
        d[k] = parity_of(space.spin_label(p), space.fock_label(p));
    }
    return SparseOperator::diagonal(d, true);
}

} // namespace dicke
