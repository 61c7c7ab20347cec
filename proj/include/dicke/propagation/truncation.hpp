// truncation.hpp — Fock-cutoff convergence check

#pragma once

#include <algorithm>
#include <cmath>

#include "dicke/core/initial_state.hpp"
#include "dicke/propagation/propagate.hpp"

namespace dicke {

struct TruncationCheckOptions {
    int delta{8};                   // compare n_max against n_max + delta
    double photon_tol{1e-4};        // max |<a†a> difference| over samples
    double tail_tol{1e-6};          // terminal population of the top four Fock levels
    int max_fock{512};              // give up searching for a converged cutoff above this
    IntegratorConfig integrator{};
};

struct TruncationVerdict {
    bool converged{false};
    int recommended_n_max{0};
    double tail_weight{0.0};        // at the requested n_max
    double max_photon_difference{0.0};
};

namespace detail {

inline Trajectory ramp_at_cutoff(ModelParams p, const RampSchedule& schedule, int fock, const IntegratorConfig& cfg) {
    p.fock_cutoff = fock;
    const HilbertSpace space(p.n_qubits, fock);
    const auto init = initial_state(space, p);
    if (p.kappa == 0.0 && init.is_pure()) return propagate_unitary(init, p, schedule, cfg);
    return propagate_lindblad(init, p, schedule, cfg);
}

inline TruncationVerdict compare_cutoffs(const ModelParams& params, const RampSchedule& schedule,
                                         const TruncationCheckOptions& opt) {
    TruncationVerdict v;
    const double n = params.n_qubits;
    if (schedule.lambda_end == schedule.lambda_start) {
        // no ramp: compare the initial states only
        ModelParams lo = params, hi = params;
        hi.fock_cutoff += opt.delta;
        const auto a = measure_all(initial_state(HilbertSpace(lo.n_qubits, lo.fock_cutoff), lo));
        const auto b = measure_all(initial_state(HilbertSpace(hi.n_qubits, hi.fock_cutoff), hi));
        v.max_photon_difference = n * std::abs(a.record.field_op - b.record.field_op);
        v.tail_weight = a.fock_tail;
    } else {
        const auto lo = ramp_at_cutoff(params, schedule, params.fock_cutoff, opt.integrator);
        const auto hi = ramp_at_cutoff(params, schedule, params.fock_cutoff + opt.delta, opt.integrator);
        for (std::size_t k = 0; k < lo.samples.size(); ++k)
            v.max_photon_difference = std::max(
                v.max_photon_difference, n * std::abs(lo.samples[k].record.field_op - hi.samples[k].record.field_op));
        v.tail_weight = lo.samples.back().fock_tail;
    }
    v.converged = v.max_photon_difference < opt.photon_tol && v.tail_weight < opt.tail_tol;
    v.recommended_n_max = params.fock_cutoff;
    return v;
}

} // namespace detail

/// Runs the ramp at n_max and n_max + delta. When that fails, the cutoff grows by delta, 2 delta, 4 delta, ...
/// until a converged value is found for recommended_n_max.
inline TruncationVerdict check_truncation_convergence(const ModelParams& params, const RampSchedule& schedule,
                                                      const TruncationCheckOptions& opt = {}) {
    params.validate();
    if (schedule.lambda_end != schedule.lambda_start) schedule.validate();
    auto verdict = detail::compare_cutoffs(params, schedule, opt);
    if (verdict.converged) return verdict;

    ModelParams p = params;
    for (int step = opt.delta;; step *= 2) {
        p.fock_cutoff = params.fock_cutoff + step;
        if (p.fock_cutoff > opt.max_fock) {
            warn("truncation check: no converged cutoff found up to " + std::to_string(opt.max_fock));
            verdict.recommended_n_max = opt.max_fock;
            return verdict;
        }
        if (detail::compare_cutoffs(p, schedule, opt).converged) {
            verdict.recommended_n_max = p.fock_cutoff;
            return verdict;
        }
    }
}

} // namespace dicke
