// sparse_operator.hpp — complex sparse matrix with explicit dimensions

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "dicke/core/hilbert_space.hpp"

namespace dicke {

class SparseOperator {
public:
    using Matrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

    struct Entry {
        Index row;
        Index col;
        cplx value;
    };

    /// Tolerance of the elementwise A == A^dagger check for hermitian-flagged operators.
    static constexpr double kHermitianTol = 1e-14;

    SparseOperator() = default;

    SparseOperator(Index rows, Index cols) : matrix_(rows, cols) {}

    /// Duplicate (row, col) pairs are summed; exact zeros are dropped.
    explicit SparseOperator(Matrix m, bool hermitian = false)
        : matrix_(std::move(m)), hermitian_(hermitian) {
        matrix_.prune(cplx(0.0, 0.0), 0.0);
        matrix_.makeCompressed();
        if (hermitian_) {
            if (matrix_.rows() != matrix_.cols())
                throw std::invalid_argument("SparseOperator: hermitian flag on a non-square matrix");
            const double defect = hermitian_defect();
            if (defect > kHermitianTol)
                throw std::invalid_argument("SparseOperator: hermitian-flagged operator has defect " +
                                            std::to_string(defect));
        }
    }

    static SparseOperator from_entries(Index rows, Index cols, std::span<const Entry> entries,
                                       bool hermitian = false) {
        std::vector<Eigen::Triplet<cplx>> trips;
        trips.reserve(entries.size());
        for (const auto& e : entries) {
            if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
                throw std::out_of_range("SparseOperator: entry outside " + std::to_string(rows) + "x" +
                                        std::to_string(cols));
            trips.emplace_back(e.row, e.col, e.value);
        }
        Matrix m(rows, cols);
        m.setFromTriplets(trips.begin(), trips.end());
        return SparseOperator(std::move(m), hermitian);
    }

    static SparseOperator identity(Index n) {
        Matrix m(n, n);
        m.setIdentity();
        return SparseOperator(std::move(m), true);
    }

    static SparseOperator diagonal(const Eigen::VectorXcd& d, bool hermitian = false) {
        std::vector<Eigen::Triplet<cplx>> trips;
        for (Index i = 0; i < d.size(); ++i) trips.emplace_back(i, i, d[i]);
        Matrix m(d.size(), d.size());
        m.setFromTriplets(trips.begin(), trips.end());
        return SparseOperator(std::move(m), hermitian);
    }

    Index rows() const { return matrix_.rows(); }
    Index cols() const { return matrix_.cols(); }
    Index nnz() const { return matrix_.nonZeros(); }
    bool hermitian() const { return hermitian_; }
    const Matrix& matrix() const { return matrix_; }

    /// Entries in row-major order.
    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        out.reserve(static_cast<std::size_t>(nnz()));
        for (Index r = 0; r < matrix_.outerSize(); ++r)
            for (Matrix::InnerIterator it(matrix_, r); it; ++it) out.push_back({it.row(), it.col(), it.value()});
        return out;
    }

    cplx coeff(Index r, Index c) const { return matrix_.coeff(r, c); }

    Eigen::MatrixXcd to_dense() const { return Eigen::MatrixXcd(matrix_); }

    double max_abs() const {
        double m = 0.0;
        for (Index k = 0; k < nnz(); ++k) m = std::max(m, std::abs(matrix_.valuePtr()[k]));
        return m;
    }

    /// max |A - A^dagger| elementwise.
    double hermitian_defect() const {
        if (rows() != cols()) return INFINITY;
        Matrix diff = matrix_ - Matrix(matrix_.adjoint());
        double m = 0.0;
        for (Index k = 0; k < diff.nonZeros(); ++k) m = std::max(m, std::abs(diff.valuePtr()[k]));
        return m;
    }

    SparseOperator adjoint() const { return SparseOperator(Matrix(matrix_.adjoint()), hermitian_); }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
        if (v.size() != cols()) throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
        return matrix_ * v;
    }

    friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
        check_same(a, b);
        return SparseOperator(Matrix(a.matrix_ + b.matrix_), a.hermitian_ && b.hermitian_);
    }
    friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
        check_same(a, b);
        return SparseOperator(Matrix(a.matrix_ - b.matrix_), a.hermitian_ && b.hermitian_);
    }
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
        if (a.cols() != b.rows()) throw std::invalid_argument("SparseOperator: product dimension mismatch");
        return SparseOperator(Matrix(a.matrix_ * b.matrix_));
    }
    friend SparseOperator operator*(double s, const SparseOperator& a) {
        return SparseOperator(Matrix(cplx(s, 0.0) * a.matrix_), a.hermitian_);
    }
    friend SparseOperator operator*(cplx s, const SparseOperator& a) {
        return SparseOperator(Matrix(s * a.matrix_), a.hermitian_ && s.imag() == 0.0);
    }

private:
    static void check_same(const SparseOperator& a, const SparseOperator& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw std::invalid_argument("SparseOperator: dimension mismatch");
    }

    Matrix matrix_;
    bool hermitian_{false};
};

inline SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    return a * b - b * a;
}

/// max_ij |A_ij - B_ij|.
inline double max_abs_difference(const SparseOperator& a, const SparseOperator& b) {
    return (a - b).max_abs();
}

} // namespace dicke
