// state.hpp — pure state vector or density matrix over a HilbertSpace

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "dicke/core/hilbert_space.hpp"

namespace dicke {

enum class StateKind { pure, density };

inline const char* to_string(StateKind k) { return k == StateKind::pure ? "pure" : "density"; }

struct StateTolerances {
    double norm = 1e-9;
    double hermitian = 1e-12;
    double min_eigenvalue = -1e-8;
};

class QuantumState {
public:
    static QuantumState pure(HilbertSpace space, Eigen::VectorXcd psi, double time = 0.0, double lambda = 0.0) {
        if (psi.size() != space.dim())
            throw std::invalid_argument("QuantumState: vector length does not match space dimension");
        return QuantumState(std::move(space), std::move(psi), time, lambda);
    }

    static QuantumState density(HilbertSpace space, Eigen::MatrixXcd rho, double time = 0.0, double lambda = 0.0) {
        if (rho.rows() != space.dim() || rho.cols() != space.dim())
            throw std::invalid_argument("QuantumState: matrix shape does not match space dimension");
        return QuantumState(std::move(space), std::move(rho), time, lambda);
    }

    StateKind kind() const { return std::holds_alternative<Eigen::VectorXcd>(data_) ? StateKind::pure : StateKind::density; }
    bool is_pure() const { return kind() == StateKind::pure; }
    const HilbertSpace& space() const { return space_; }
    double time() const { return time_; }
    double lambda() const { return lambda_; }
    void set_time(double t, double lambda) { time_ = t; lambda_ = lambda; }

    const Eigen::VectorXcd& vector() const {
        if (!is_pure()) throw std::logic_error("QuantumState: not a pure state");
        return std::get<Eigen::VectorXcd>(data_);
    }
    Eigen::VectorXcd& vector() {
        if (!is_pure()) throw std::logic_error("QuantumState: not a pure state");
        return std::get<Eigen::VectorXcd>(data_);
    }
    const Eigen::MatrixXcd& matrix() const {
        if (is_pure()) throw std::logic_error("QuantumState: not a density matrix");
        return std::get<Eigen::MatrixXcd>(data_);
    }
    Eigen::MatrixXcd& matrix() {
        if (is_pure()) throw std::logic_error("QuantumState: not a density matrix");
        return std::get<Eigen::MatrixXcd>(data_);
    }

    /// |psi><psi| for pure states; a copy otherwise.
    QuantumState to_density() const {
        if (!is_pure()) return *this;
        const auto& v = vector();
        return density(space_, v * v.adjoint(), time_, lambda_);
    }

    /// The same state expressed in the unrestricted product space.
    QuantumState embedded() const {
        if (space_.is_full()) return *this;
        if (is_pure()) return pure(space_.full(), space_.embed(vector()), time_, lambda_);
        return density(space_.full(), space_.embed(matrix()), time_, lambda_);
    }

    /// ||psi||^2 for pure states, tr(rho) for density matrices.
    double trace() const {
        if (is_pure()) return vector().squaredNorm();
        return matrix().trace().real();
    }

    double hermitian_defect() const {
        if (is_pure()) return 0.0;
        const auto& r = matrix();
        return (r - r.adjoint()).cwiseAbs().maxCoeff();
    }

    double min_eigenvalue() const {
        if (is_pure()) return 0.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (matrix() + matrix().adjoint()), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    /// Throws std::domain_error describing the first violated invariant.
    void validate(const StateTolerances& tol = {}) const {
        if (is_pure()) {
            const double n = vector().norm();
            if (std::abs(n - 1.0) > tol.norm)
                throw std::domain_error("pure state norm " + std::to_string(n) + " differs from 1");
            return;
        }
        const double tr = trace();
        if (std::abs(tr - 1.0) > tol.norm)
            throw std::domain_error("density matrix trace " + std::to_string(tr) + " differs from 1");
        if (hermitian_defect() > tol.hermitian)
            throw std::domain_error("density matrix is not Hermitian");
        const double emin = min_eigenvalue();
        if (emin < tol.min_eigenvalue)
            throw std::domain_error("density matrix has eigenvalue " + std::to_string(emin));
    }

    /// rho <- (rho + rho^dagger)/2.
    void symmetrize() {
        if (is_pure()) return;
        auto& r = matrix();
        Eigen::MatrixXcd h = 0.5 * (r + r.adjoint());
        r = std::move(h);
    }

private:
    template <class Data>
    QuantumState(HilbertSpace space, Data d, double time, double lambda)
        : space_(std::move(space)), data_(std::move(d)), time_(time), lambda_(lambda) {}

    HilbertSpace space_;
    std::variant<Eigen::VectorXcd, Eigen::MatrixXcd> data_;
    double time_{0.0};
    double lambda_{0.0};
};

} // namespace dicke
