// sweep.hpp — annealing-velocity sweeps with per-point onset detection

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dicke/core/initial_state.hpp"
#include "dicke/propagation/propagate.hpp"
#include "dicke/propagation/truncation.hpp"
#include "dicke/sweep/fit.hpp"
#include "dicke/sweep/onset.hpp"
#include "dicke/sweep/parallel.hpp"

namespace dicke {

/// log2 υ from lo to hi inclusive in steps of `step`.
inline std::vector<double> log2_upsilon_range(double lo, double hi, double step) {
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int k = 0; k <= n; ++k) out.push_back(lo + k * step);
    return out;
}

struct SweepConfig {
    std::vector<int> n_list;
    std::vector<double> log2_upsilon_list{log2_upsilon_range(-7.0, 6.0, 0.5)};
    double kappa{0.0};
    double nbar{0.0};
    double epsilon{1.0};
    double omega{1.0};
    std::vector<OnsetCriterion> criteria{std::begin(kAllCriteria), std::end(kAllCriteria)};
    OnsetThresholds thresholds{};
    double lambda_start{0.0};
    double lambda_end{2.0};
    int sample_count{401};
    int default_fock_cutoff{64};
    std::map<int, int> fock_cutoffs;   // per-N override of default_fock_cutoff
    bool stop_after_onsets{false};     // end each ramp once every requested criterion has fired
    bool verify_truncation{false};     // run the cutoff check per N at the slowest υ
    int workers{0};                    // 0: DICKE_WORKERS or hardware concurrency
    IntegratorConfig integrator{};

    int fock_for(int n) const {
        auto it = fock_cutoffs.find(n);
        return it == fock_cutoffs.end() ? default_fock_cutoff : it->second;
    }

    void validate() const {
        for (int n : n_list)
            if (n < 1) throw std::invalid_argument("invalid sweep 'n_list': entries must be positive");
        for (double v : log2_upsilon_list)
            if (!std::isfinite(v)) throw std::invalid_argument("invalid sweep 'log2_upsilon': entries must be finite");
        if (!(thresholds.qubit_op > 0)) throw std::invalid_argument("invalid sweep 'qubit_op_thresh': must be > 0");
        if (!(thresholds.field_op > 0)) throw std::invalid_argument("invalid sweep 'field_op_thresh': must be > 0");
        if (criteria.empty()) throw std::invalid_argument("invalid sweep 'criteria': need at least one");
        for (const auto& [n, f] : fock_cutoffs)
            if (f < 1) throw std::invalid_argument("invalid sweep 'fock_cutoffs': entries must be positive");
        RampSchedule s{1.0, lambda_start, lambda_end, sample_count};
        s.validate();
        integrator.validate();
        ModelParams p;
        p.kappa = kappa;
        p.nbar = nbar;
        p.epsilon = epsilon;
        p.omega = omega;
        p.fock_cutoff = default_fock_cutoff;
        p.validate();
    }

    ModelParams params_for(int n) const {
        ModelParams p;
        p.n_qubits = n;
        p.epsilon = epsilon;
        p.omega = omega;
        p.kappa = kappa;
        p.nbar = nbar;
        p.fock_cutoff = fock_for(n);
        return p;
    }

    RampSchedule schedule_for(double log2_upsilon) const {
        return RampSchedule{std::exp2(log2_upsilon), lambda_start, lambda_end, sample_count};
    }
};

struct SweepRow {
    int n{0};
    double log2_upsilon{0.0};
    double kappa{0.0};
    OnsetCriterion criterion{OnsetCriterion::qubit_squeezing_death};
    OnsetStatus status{OnsetStatus::none};
    double lambda_d{std::numeric_limits<double>::quiet_NaN()};
    double peak_spin_sq{std::numeric_limits<double>::quiet_NaN()};
    double peak_field_sq{std::numeric_limits<double>::quiet_NaN()};
    double max_qubit_op{std::numeric_limits<double>::quiet_NaN()};
    double max_field_op{std::numeric_limits<double>::quiet_NaN()};
    bool stopped_early{false};
    std::string error;  // non-empty when the point failed

    bool failed() const { return !error.empty(); }
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;                       // sorted by (N, log2 υ, criterion)
    std::map<int, TruncationVerdict> truncation;      // filled when verify_truncation is set

    std::vector<SweepRow> select(int n, OnsetCriterion c) const {
        std::vector<SweepRow> out;
        for (const auto& r : rows)
            if (r.n == n && r.criterion == c) out.push_back(r);
        return out;
    }
};

namespace detail {

inline bool all_found(const std::vector<ObservableRecord>& recs, const SweepConfig& cfg) {
    for (auto c : cfg.criteria)
        if (!detect_onset(recs, c, cfg.thresholds, true).found()) return false;
    return true;
}

inline std::vector<SweepRow> run_sweep_point(const SweepConfig& cfg, int n, double log2_upsilon) {
    std::vector<SweepRow> rows;
    for (auto c : cfg.criteria) {
        SweepRow r;
        r.n = n;
        r.log2_upsilon = log2_upsilon;
        r.kappa = cfg.kappa;
        r.criterion = c;
        rows.push_back(r);
    }
    try {
        const ModelParams p = cfg.params_for(n);
        const RampSchedule s = cfg.schedule_for(log2_upsilon);
        const auto init = initial_state(HilbertSpace(n, p.fock_cutoff), p);
        PropagationOptions opt;
        std::vector<ObservableRecord> seen;
        if (cfg.stop_after_onsets) {
            opt.stop_when = [&](const ObservableRecord& r) {
                seen.push_back(r);
                return all_found(seen, cfg);
            };
        }
        const Trajectory traj = (p.kappa == 0.0 && init.is_pure()) ? propagate_unitary(init, p, s, cfg.integrator, opt)
                                                                    : propagate_lindblad(init, p, s, cfg.integrator, opt);
        const auto recs = traj.records();
        double peak_q = -std::numeric_limits<double>::infinity(), peak_b = peak_q, max_qop = peak_q, max_fop = peak_q;
        for (const auto& r : recs) {
            peak_q = std::max(peak_q, r.spin_sq);
            peak_b = std::max(peak_b, r.field_sq);
            max_qop = std::max(max_qop, r.qubit_op);
            max_fop = std::max(max_fop, r.field_op);
        }
        for (auto& row : rows) {
            const auto ev = detect_onset(recs, row.criterion, cfg.thresholds);
            row.status = ev.status;
            row.lambda_d = ev.lambda_d;
            row.peak_spin_sq = peak_q;
            row.peak_field_sq = peak_b;
            row.max_qubit_op = max_qop;
            row.max_field_op = max_fop;
            row.stopped_early = traj.stats.stopped_early;
        }
    } catch (const std::exception& e) {
        for (auto& row : rows) row.error = e.what();
    }
    return rows;
}

inline int criterion_rank(OnsetCriterion c) { return static_cast<int>(c); }

} // namespace detail

/// Runs every (N, υ) point; failures are recorded in the affected rows and never abort the sweep.
/// Rows are independent of the worker count and execution order.
inline SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    SweepResult result;
    result.config = config;

    if (config.verify_truncation && !config.log2_upsilon_list.empty()) {
        const double slowest = *std::min_element(config.log2_upsilon_list.begin(), config.log2_upsilon_list.end());
        for (int n : config.n_list) {
            TruncationCheckOptions topt;
            topt.integrator = config.integrator;
            auto v = check_truncation_convergence(config.params_for(n), config.schedule_for(slowest), topt);
            if (!v.converged)
                warn("sweep: fock cutoff " + std::to_string(config.fock_for(n)) + " for N=" + std::to_string(n) +
                     " is not converged; recommended " + std::to_string(v.recommended_n_max));
            result.truncation[n] = v;
        }
    }

    std::vector<std::pair<int, double>> tasks;
    for (int n : config.n_list)
        for (double lu : config.log2_upsilon_list) tasks.emplace_back(n, lu);
    std::vector<std::vector<SweepRow>> out(tasks.size());
    const int workers = config.workers > 0 ? config.workers : default_worker_count();
    parallel_for(tasks.size(), workers, [&](std::size_t i) {
        out[i] = detail::run_sweep_point(config, tasks[i].first, tasks[i].second);
    });
    for (auto& v : out)
        for (auto& r : v) result.rows.push_back(std::move(r));
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.log2_upsilon != b.log2_upsilon) return a.log2_upsilon < b.log2_upsilon;
        return detail::criterion_rank(a.criterion) < detail::criterion_rank(b.criterion);
    });
    return result;
}

/// Power-law fit of one (N, criterion) series over log2 υ >= window_min (the "sufficiently high" velocities).
inline PowerLawFit fit_sweep(const SweepResult& result, int n, OnsetCriterion c, double window_min_log2 = 0.0,
                             double lambda_c = 0.5) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : result.select(n, c))
        if (r.log2_upsilon >= window_min_log2 && !r.failed()) pts.emplace_back(std::exp2(r.log2_upsilon), r.lambda_d);
    return fit_power_law(pts, lambda_c);
}

} // namespace dicke
