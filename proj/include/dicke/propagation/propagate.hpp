// propagate.hpp — ramped Schrödinger and master-equation integration with λ-uniform sampling

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "dicke/core/diagnostics.hpp"
#include "dicke/observables/record.hpp"
#include "dicke/propagation/dopri5.hpp"
#include "dicke/propagation/generators.hpp"
#include "dicke/propagation/krylov.hpp"
#include "dicke/propagation/trajectory.hpp"

namespace dicke {

struct PropagationOptions {
    StorageMode storage{StorageMode::observables_only};
    std::function<bool(const ObservableRecord&)> stop_when;  // checked after every sample
    bool use_parity_sector{true};       // integrate in one parity block when the state allows it
    Index positivity_dense_limit{400};  // full eigenvalue check at every sample up to this dimension
    Index positivity_final_limit{2500}; // full check of the last sample up to this dimension
    double norm_drift_limit{1e-6};
    double trace_drift_warn{1e-7};
    double positivity_tol{1e-6};
};

class PositivityViolation : public std::domain_error {
public:
    PositivityViolation(double t, double lambda, double min_eig)
        : std::domain_error(message(t, lambda, min_eig)), t_(t), lambda_(lambda), min_eig_(min_eig) {}
    double time() const { return t_; }
    double lambda() const { return lambda_; }
    double min_eigenvalue() const { return min_eig_; }

private:
    static std::string message(double t, double lambda, double e) {
        std::ostringstream os;
        os.precision(17);
        os << "density matrix lost positivity at t=" << t << " (lambda=" << lambda << "): min eigenvalue " << e;
        return os.str();
    }
    double t_, lambda_, min_eig_;
};

namespace detail {

inline void check_space_matches(const HilbertSpace& space, const ModelParams& params) {
    if (space.n_qubits() != params.n_qubits || space.fock_dim() != params.fock_cutoff)
        throw std::invalid_argument("initial state space does not match the model parameters");
}

inline std::optional<ParitySector> definite_parity(const HilbertSpace& full, const Eigen::VectorXcd& psi) {
    double w[2] = {0.0, 0.0};
    for (Index k = 0; k < full.dim(); ++k)
        w[parity_of(full.spin_label(k), full.fock_label(k)) > 0 ? 0 : 1] += std::norm(psi[k]);
    if (w[1] <= 1e-28) return ParitySector::even;
    if (w[0] <= 1e-28) return ParitySector::odd;
    return std::nullopt;
}

inline std::optional<ParitySector> definite_parity(const HilbertSpace& full, const Eigen::MatrixXcd& rho) {
    for (auto sector : {ParitySector::even, ParitySector::odd}) {
        const HilbertSpace sub = full.restricted(sector);
        if ((rho - sub.embed(sub.restrict(rho))).cwiseAbs().maxCoeff() <= 1e-14) return sector;
    }
    return std::nullopt;
}

/// Output copy of a state: unit trace (drift is reported in the stats) and in the caller's space.
inline QuantumState in_space(const QuantumState& st, const HilbertSpace& target) {
    QuantumState out = target.is_full() && !st.space().is_full() ? st.embedded() : st;
    if (const double tr = out.trace(); tr > 0.0 && tr != 1.0) {
        if (out.is_pure()) out.vector() /= std::sqrt(tr);
        else out.matrix() /= tr;
    }
    return out;
}

/// Appends one sample; returns true when the stop condition fires.
inline bool push_sample(Trajectory& traj, const QuantumState& st, const HilbertSpace& out_space,
                        const PropagationOptions& opt) {
    const auto m = measure_all(st);
    TrajectorySample s{st.time(), st.lambda(), m.record, m.fock_tail, std::nullopt};
    if (opt.storage == StorageMode::states) s.state = in_space(st, out_space);
    traj.samples.push_back(std::move(s));
    return opt.stop_when && opt.stop_when(m.record);
}

inline double min_eigenvalue_hermitian(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// Smallest eigenvalue available at this sample: exact for small spaces, otherwise from the reductions.
inline double sample_min_eigenvalue(const QuantumState& st, bool last, const PropagationOptions& opt) {
    const Index d = st.space().dim();
    if (d <= opt.positivity_dense_limit || (last && d <= opt.positivity_final_limit)) return st.min_eigenvalue();
    return std::min(min_eigenvalue_hermitian(reduce_to_qubits(st).matrix),
                    min_eigenvalue_hermitian(reduce_to_field(st).matrix));
}

/// Fourth-order commutator-free Magnus step built from two Lanczos exponentials.
class KrylovStepper {
public:
    KrylovStepper(const SchrodingerGenerator& gen, const RampSchedule& sched, const IntegratorConfig& cfg)
        : gen_(gen), sched_(sched), cfg_(cfg) {}

    void advance(Eigen::VectorXcd& psi, double t0, double t1) {
        const double h_nom = std::isfinite(cfg_.max_step) ? cfg_.max_step : cfg_.krylov_step;
        const long n = std::max(1L, static_cast<long>(std::ceil((t1 - t0) / h_nom - 1e-9)));
        const double h = (t1 - t0) / n;
        for (long i = 0; i < n; ++i) step(psi, t0 + i * h, h, 0);
    }

    const StepperStats& stats() const { return stats_; }

private:
    void step(Eigen::VectorXcd& psi, double t, double h, int depth) {
        if (depth > 30) throw StepSizeUnderflow(t, h);
        static const double r3 = std::sqrt(3.0);
        const double l1 = sched_.lambda_at(t + (0.5 - r3 / 6) * h);
        const double l2 = sched_.lambda_at(t + (0.5 + r3 / 6) * h);
        const double a1 = 0.25 - r3 / 6, a2 = 0.25 + r3 / 6;
        Eigen::VectorXcd trial = psi;
        if (exp_step(trial, a2 * l1 + a1 * l2, h) && exp_step(trial, a1 * l1 + a2 * l2, h)) {
            psi = std::move(trial);
            ++stats_.accepted;
            return;
        }
        ++stats_.rejected;
        step(psi, t, 0.5 * h, depth + 1);
        step(psi, t + 0.5 * h, 0.5 * h, depth + 1);
    }

    // psi <- exp(-i h (H0/2 + c V)) psi
    bool exp_step(Eigen::VectorXcd& psi, double c, double h) {
        auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
            gen_.combination_apply(0.5, c, in, out);
            ++stats_.rhs_evals;
        };
        return lanczos_expm(apply, h, psi, cfg_.krylov_dim, cfg_.abs_tol);
    }

    const SchrodingerGenerator& gen_;
    const RampSchedule& sched_;
    const IntegratorConfig& cfg_;
    StepperStats stats_;
};

inline void copy_stats(PropagationStats& out, const StepperStats& s) {
    out.accepted_steps = s.accepted;
    out.rejected_steps = s.rejected;
    out.rhs_evals = s.rhs_evals;
}

} // namespace detail

/// Solves i dψ/dt = H(λ(t)) ψ along the ramp, sampling uniformly in λ.
inline Trajectory propagate_unitary(const QuantumState& initial, const ModelParams& params, const RampSchedule& schedule,
                                    const IntegratorConfig& config = {}, const PropagationOptions& options = {}) {
    params.validate();
    schedule.validate();
    config.validate();
    if (params.kappa != 0.0) throw std::invalid_argument("propagate_unitary: kappa must be 0; use propagate_lindblad");
    if (!initial.is_pure()) throw std::invalid_argument("propagate_unitary: initial state must be pure");
    detail::check_space_matches(initial.space(), params);
    initial.validate();

    HilbertSpace work = initial.space();
    Eigen::VectorXcd psi = initial.vector();
    if (options.use_parity_sector && work.is_full()) {
        if (auto sector = detail::definite_parity(work, psi)) {
            work = work.restricted(*sector);
            psi = work.restrict(psi);
        }
    }
    const SchrodingerGenerator gen(work, params);

    Trajectory traj;
    traj.schedule = schedule;
    traj.params = params;
    traj.storage_mode = options.storage;
    traj.stats.sector = work.sector();

    const auto times = schedule.sample_times();
    const auto lambdas = schedule.sample_lambdas();
    auto snapshot = [&](const Eigen::VectorXcd& v, std::size_t k) {
        return QuantumState::pure(work, v, times[k], lambdas[k]);
    };
    auto check_norm = [&](const Eigen::VectorXcd& v, std::size_t k) {
        const double drift = std::abs(v.squaredNorm() - 1.0);
        traj.stats.max_norm_drift = std::max(traj.stats.max_norm_drift, drift);
        if (drift > options.norm_drift_limit) {
            std::ostringstream os;
            os << "norm drift " << drift << " at t=" << times[k] << " exceeds " << options.norm_drift_limit;
            throw std::runtime_error(os.str());
        }
    };

    traj.stats.max_norm_drift = std::abs(psi.squaredNorm() - 1.0);
    bool stop = detail::push_sample(traj, snapshot(psi, 0), initial.space(), options);
    std::size_t k = 1;
    if (config.method == IntegratorMethod::adaptive_rk) {
        auto rhs = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { gen(schedule.lambda_at(t), y, dy); };
        auto stepper = make_dopri5(rhs, 0.0, psi, config.rel_tol, config.abs_tol, config.max_step, config.max_steps);
        for (; k < times.size() && !stop; ++k) {
            stepper.advance_to(times[k]);
            check_norm(stepper.state(), k);
            stop = detail::push_sample(traj, snapshot(stepper.state(), k), initial.space(), options);
        }
        psi = stepper.state();
        detail::copy_stats(traj.stats, stepper.stats());
    } else {
        detail::KrylovStepper stepper(gen, schedule, config);
        for (; k < times.size() && !stop; ++k) {
            stepper.advance(psi, times[k - 1], times[k]);
            check_norm(psi, k);
            stop = detail::push_sample(traj, snapshot(psi, k), initial.space(), options);
        }
        detail::copy_stats(traj.stats, stepper.stats());
    }
    traj.stats.stopped_early = k < times.size();
    traj.final_state = detail::in_space(snapshot(psi, k - 1), initial.space());
    return traj;
}

/// Integrates the master equation along the ramp. Pure initial states are promoted to |ψ><ψ|.
inline Trajectory propagate_lindblad(const QuantumState& initial, const ModelParams& params, const RampSchedule& schedule,
                                     const IntegratorConfig& config = {}, const PropagationOptions& options = {}) {
    params.validate();
    schedule.validate();
    config.validate();
    if (config.method != IntegratorMethod::adaptive_rk)
        throw std::invalid_argument("propagate_lindblad: only the adaptive_rk method is available for density matrices");
    detail::check_space_matches(initial.space(), params);
    if (params.kappa > 0.0 && !initial.space().is_full())
        throw std::invalid_argument("propagate_lindblad: kappa > 0 requires the full (unrestricted) space");
    const QuantumState rho0 = initial.to_density();
    rho0.validate();

    HilbertSpace work = rho0.space();
    Eigen::MatrixXcd rho = rho0.matrix();
    if (options.use_parity_sector && params.kappa == 0.0 && work.is_full()) {
        if (auto sector = detail::definite_parity(work, rho)) {
            work = work.restricted(*sector);
            rho = work.restrict(rho);
        }
    }
    const LindbladGenerator gen(work, params);

    Trajectory traj;
    traj.schedule = schedule;
    traj.params = params;
    traj.storage_mode = options.storage;
    traj.stats.sector = work.sector();

    const auto times = schedule.sample_times();
    const auto lambdas = schedule.sample_lambdas();
    bool warned = false;
    auto snapshot = [&](const Eigen::MatrixXcd& m, std::size_t k) {
        return QuantumState::density(work, m, times[k], lambdas[k]);
    };
    auto check_sample = [&](const QuantumState& st, std::size_t k, bool last) {
        const double drift = std::abs(st.trace() - 1.0);
        traj.stats.max_norm_drift = std::max(traj.stats.max_norm_drift, drift);
        if (drift > options.trace_drift_warn && !warned) {
            std::ostringstream os;
            os << "trace drift " << drift << " at t=" << times[k];
            warn(os.str());
            warned = true;
        }
        const double e = detail::sample_min_eigenvalue(st, last, options);
        traj.stats.min_eigenvalue = std::min(traj.stats.min_eigenvalue, e);
        if (e < -options.positivity_tol) throw PositivityViolation(times[k], lambdas[k], e);
    };

    traj.stats.min_eigenvalue = 0.0;
    check_sample(snapshot(rho, 0), 0, false);
    bool stop = detail::push_sample(traj, snapshot(rho, 0), initial.space(), options);
    std::size_t k = 1;
    auto rhs = [&](double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) { gen(schedule.lambda_at(t), y, dy); };
    auto stepper = make_dopri5(rhs, 0.0, rho, config.rel_tol, config.abs_tol, config.max_step, config.max_steps);
    for (; k < times.size() && !stop; ++k) {
        stepper.advance_to(times[k]);
        Eigen::MatrixXcd sym = 0.5 * (stepper.state() + stepper.state().adjoint());
        stepper.reset_state(sym);
        const QuantumState st = snapshot(stepper.state(), k);
        check_sample(st, k, k + 1 == times.size());
        stop = detail::push_sample(traj, st, initial.space(), options);
    }
    detail::copy_stats(traj.stats, stepper.stats());
    traj.stats.stopped_early = k < times.size();
    traj.final_state = detail::in_space(snapshot(stepper.state(), k - 1), initial.space());
    return traj;
}

} // namespace dicke
