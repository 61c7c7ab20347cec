// generators.hpp — right-hand sides of the Schrödinger and master equations at fixed λ

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dicke/core/operators.hpp"
#include "dicke/core/params.hpp"

namespace dicke {

namespace detail {

inline Eigen::VectorXd diagonal_of(const SparseOperator& op) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(op.rows());
    for (const auto& e : op.entries()) {
        if (e.row != e.col) throw std::logic_error("bare Hamiltonian is expected to be diagonal");
        d[e.row] = e.value.real();
    }
    return d;
}

} // namespace detail

/// -i H(λ) ψ with H = H0 + λ V and H0 diagonal.
class SchrodingerGenerator {
public:
    SchrodingerGenerator(const HilbertSpace& space, const ModelParams& params) {
        auto parts = build_hamiltonian_parts(space, params);
        h0_ = detail::diagonal_of(parts.bare);
        v_ = parts.coupling.matrix();
    }

    Index dim() const { return h0_.size(); }

    void hamiltonian_apply(double lambda, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) const {
        out.noalias() = v_ * psi;
        out = lambda * out + h0_.cwiseProduct(psi);
    }

    /// (c0 H0 + c1 V) ψ, used by the Krylov exponential.
    void combination_apply(double c0, double c1, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) const {
        out.noalias() = v_ * psi;
        out = c1 * out + c0 * h0_.cwiseProduct(psi);
    }

    void operator()(double lambda, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) const {
        hamiltonian_apply(lambda, psi, out);
        out *= cplx(0.0, -1.0);
    }

private:
    Eigen::VectorXd h0_;
    SparseOperator::Matrix v_;
};

/// Master-equation right-hand side acting on ρ as a matrix; never forms the superoperator.
///   dρ = -i[H0 + λV, ρ] + κ(n̄+1)(2aρa† − {a†a, ρ}) + κn̄(2a†ρa − {aa†, ρ})
class LindbladGenerator {
public:
    LindbladGenerator(const HilbertSpace& space, const ModelParams& params)
        : fock_(space.fock_dim()), down_(params.kappa * (params.nbar + 1)), up_(params.kappa * params.nbar) {
        if (params.kappa > 0 && !space.is_full())
            throw std::invalid_argument("master equation with kappa > 0 needs the full space");
        auto parts = build_hamiltonian_parts(space, params);
        h0_ = detail::diagonal_of(parts.bare);
        v_ = parts.coupling.matrix();
        const Index d = h0_.size();
        vreal_.resize(static_cast<std::size_t>(v_.nonZeros()));
        for (Index i = 0; i < v_.nonZeros(); ++i) vreal_[i] = v_.valuePtr()[i].real();
        sqrt_ = Eigen::VectorXd::LinSpaced(fock_ + 1, 0, fock_).cwiseSqrt();
        anti_ = Eigen::VectorXd::Zero(d);
        if (params.kappa > 0) {
            for (Index k = 0; k < d; ++k) {
                const int n = static_cast<int>(k % fock_);
                const double aadag = n + 1 < fock_ ? n + 1.0 : 0.0;  // truncated a a†
                anti_[k] = down_ * n + up_ * aadag;
            }
        }
    }

    Index dim() const { return h0_.size(); }

    void operator()(double lambda, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
        const Index d = rho.rows();
        out.noalias() = rho * v_;
        const auto* outer = v_.outerIndexPtr();
        const auto* inner = v_.innerIndexPtr();
        const bool damped = down_ != 0.0 || up_ != 0.0;
        // explicit real arithmetic: std::complex products go through the slow NaN-checking path
        for (Index l = 0; l < d; ++l) {
            const cplx* col = rho.data() + l * d;
            cplx* dst = out.data() + l * d;
            const int nl = static_cast<int>(l % fock_);
            int nk = 0;
            for (Index k = 0; k < d; ++k, nk = nk + 1 == fock_ ? 0 : nk + 1) {
                double vr_re = 0.0, vr_im = 0.0;  // (V rho)(k, l)
                for (auto it = outer[k]; it < outer[k + 1]; ++it) {
                    const double w = vreal_[it];
                    vr_re += w * col[inner[it]].real();
                    vr_im += w * col[inner[it]].imag();
                }
                const double c_re = vr_re - dst[k].real(), c_im = vr_im - dst[k].imag();
                const double g_re = -anti_[k] - anti_[l], g_im = h0_[l] - h0_[k];
                const double r_re = col[k].real(), r_im = col[k].imag();
                double re = lambda * c_im + g_re * r_re - g_im * r_im;
                double im = -lambda * c_re + g_re * r_im + g_im * r_re;
                if (damped) {
                    if (nk + 1 < fock_ && nl + 1 < fock_) {
                        const double f = 2 * down_ * sqrt_[nk + 1] * sqrt_[nl + 1];
                        re += f * col[d + k + 1].real();
                        im += f * col[d + k + 1].imag();
                    }
                    if (up_ != 0.0 && nk > 0 && nl > 0) {
                        const double f = 2 * up_ * sqrt_[nk] * sqrt_[nl];
                        re += f * col[-d + k - 1].real();
                        im += f * col[-d + k - 1].imag();
                    }
                }
                dst[k] = cplx(re, im);
            }
        }
    }

private:
    int fock_;
    double down_, up_;
    Eigen::VectorXd h0_;
    Eigen::VectorXd anti_;
    Eigen::VectorXd sqrt_;
    std::vector<double> vreal_;
    SparseOperator::Matrix v_;
};

} // namespace dicke
