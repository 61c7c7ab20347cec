// hilbert_space.hpp — symmetric Dicke manifold ⊗ truncated Fock space
//
// Basis ordering is spin-major, Fock-minor: the product index of |m, n> is
//   i = s * fock_dim + n,   s = m + N/2 in [0, N],   n in [0, fock_dim).
// A parity-restricted space keeps only the product states with
// (-1)^(s + n) = +1 (even) or -1 (odd), in increasing product-index order.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dicke {

using Index = Eigen::Index;
using cplx = std::complex<double>;

enum class ParitySector { full, even, odd };

inline const char* to_string(ParitySector s) {
    switch (s) {
        case ParitySector::full: return "full";
        case ParitySector::even: return "even";
        case ParitySector::odd: return "odd";
    }
    return "?";
}

/// Parity eigenvalue (-1)^(s+n) of the product state |s, n>.
inline int parity_of(int s, int n) { return ((s + n) % 2 == 0) ? 1 : -1; }

class HilbertSpace {
public:
    HilbertSpace(int n_qubits, int fock_dim, ParitySector sector = ParitySector::full)
        : n_qubits_(n_qubits), fock_dim_(fock_dim), sector_(sector) {
        if (n_qubits < 1) throw std::invalid_argument("HilbertSpace: n_qubits must be >= 1");
        if (fock_dim < 1) throw std::invalid_argument("HilbertSpace: fock_dim must be >= 1");
        if (sector_ != ParitySector::full) {
            const int want = sector_ == ParitySector::even ? 1 : -1;
            auto basis = std::make_shared<std::vector<Index>>();
            auto lookup = std::make_shared<std::vector<Index>>(product_dim(), Index{-1});
            basis->reserve(product_dim() / 2 + 1);
            for (int s = 0; s <= n_qubits_; ++s) {
                for (int n = 0; n < fock_dim_; ++n) {
                    if (parity_of(s, n) != want) continue;
                    (*lookup)[composite(s, n)] = static_cast<Index>(basis->size());
                    basis->push_back(composite(s, n));
                }
            }
            basis_ = std::move(basis);
            lookup_ = std::move(lookup);
        }
    }

    int n_qubits() const { return n_qubits_; }
    double j() const { return 0.5 * n_qubits_; }
    int spin_dim() const { return n_qubits_ + 1; }
    int fock_dim() const { return fock_dim_; }
    ParitySector sector() const { return sector_; }
    bool is_full() const { return sector_ == ParitySector::full; }

    /// (N+1) * fock_dim, the unrestricted product dimension.
    Index product_dim() const { return static_cast<Index>(spin_dim()) * fock_dim_; }
    /// Number of retained basis states.
    Index dim() const { return is_full() ? product_dim() : static_cast<Index>(basis_->size()); }

    Index composite(int s, int n) const { return static_cast<Index>(s) * fock_dim_ + n; }
    int spin_label(Index product_index) const { return static_cast<int>(product_index / fock_dim_); }
    int fock_label(Index product_index) const { return static_cast<int>(product_index % fock_dim_); }
    double m_of(int s) const { return s - j(); }

    /// Product index of the k-th retained basis state.
    Index product_index(Index k) const { return is_full() ? k : (*basis_)[k]; }

    /// Retained index of a product state, or nullopt if it lies outside the sector.
    std::optional<Index> local_index(Index product_index) const {
        if (product_index < 0 || product_index >= product_dim()) return std::nullopt;
        if (is_full()) return product_index;
        const Index k = (*lookup_)[product_index];
        if (k < 0) return std::nullopt;
        return k;
    }

    HilbertSpace full() const { return HilbertSpace(n_qubits_, fock_dim_); }
    HilbertSpace restricted(ParitySector sector) const { return HilbertSpace(n_qubits_, fock_dim_, sector); }

    /// Lift a sector vector to the product space (zeros elsewhere).
    Eigen::VectorXcd embed(const Eigen::VectorXcd& v) const {
        check_size(v.size(), "embed");
        if (is_full()) return v;
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(product_dim());
        for (Index k = 0; k < dim(); ++k) out[(*basis_)[k]] = v[k];
        return out;
    }

    Eigen::MatrixXcd embed(const Eigen::MatrixXcd& m) const {
        check_size(m.rows(), "embed");
        if (is_full()) return m;
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(product_dim(), product_dim());
        for (Index c = 0; c < dim(); ++c)
            for (Index r = 0; r < dim(); ++r) out((*basis_)[r], (*basis_)[c]) = m(r, c);
        return out;
    }

    /// Project a product-space vector onto this sector (drops other components).
    Eigen::VectorXcd restrict(const Eigen::VectorXcd& v) const {
        if (v.size() != product_dim()) throw std::invalid_argument("restrict: expected a product-space vector");
        if (is_full()) return v;
        Eigen::VectorXcd out(dim());
        for (Index k = 0; k < dim(); ++k) out[k] = v[(*basis_)[k]];
        return out;
    }

    Eigen::MatrixXcd restrict(const Eigen::MatrixXcd& m) const {
        if (m.rows() != product_dim() || m.cols() != product_dim())
            throw std::invalid_argument("restrict: expected a product-space matrix");
        if (is_full()) return m;
        Eigen::MatrixXcd out(dim(), dim());
        for (Index c = 0; c < dim(); ++c)
            for (Index r = 0; r < dim(); ++r) out(r, c) = m((*basis_)[r], (*basis_)[c]);
        return out;
    }

    bool operator==(const HilbertSpace& o) const {
        return n_qubits_ == o.n_qubits_ && fock_dim_ == o.fock_dim_ && sector_ == o.sector_;
    }

private:
    void check_size(Index n, const char* what) const {
        if (n != dim())
            throw std::invalid_argument(std::string(what) + ": size " + std::to_string(n) +
                                        " does not match space dimension " + std::to_string(dim()));
    }

    int n_qubits_;
    int fock_dim_;
    ParitySector sector_;
    std::shared_ptr<const std::vector<Index>> basis_;   // sector -> product index
    std::shared_ptr<const std::vector<Index>> lookup_;  // product -> sector index or -1
};

} // namespace dicke
