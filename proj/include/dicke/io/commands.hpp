// commands.hpp — the six subcommands: compute, then emit data files paired with manifests

#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>

#include "dicke/core/initial_state.hpp"
#include "dicke/io/config.hpp"
#include "dicke/io/manifest.hpp"
#include "dicke/io/output.hpp"
#include "dicke/io/writers.hpp"
#include "dicke/propagation/propagate.hpp"
#include "dicke/propagation/truncation.hpp"
#include "dicke/quasiprob/agarwal.hpp"
#include "dicke/quasiprob/field_wigner.hpp"
#include "dicke/sweep/gap_scaling.hpp"
#include "dicke/sweep/sweep.hpp"

namespace dicke::io {

namespace detail {

struct Emission {
    std::string path;
    std::string data;
};

inline Trajectory run_ramp(const RunConfig& cfg, RunManifest& m) {
    const ModelParams p = cfg.model();
    const RampSchedule s = cfg.schedule();
    const auto init = initial_state(HilbertSpace(p.n_qubits, p.fock_cutoff), p);
    PropagationOptions opt;
    opt.use_parity_sector = cfg.parity_sector;
    const bool unitary = p.kappa == 0.0 && init.is_pure();
    Trajectory traj = unitary ? propagate_unitary(init, p, s, cfg.integrator(), opt)
                              : propagate_lindblad(init, p, s, cfg.integrator(), opt);
    m.achieved = to_json(traj.stats);
    m.achieved["dynamics"] = unitary ? "unitary" : "lindblad";
    m.achieved["rtol"] = cfg.rtol;
    m.achieved["atol"] = cfg.atol;
    double tail = 0.0;
    for (const auto& smp : traj.samples) tail = std::max(tail, smp.fock_tail);
    m.truncation["max_fock_tail"] = tail;
    if (cfg.check_truncation) {
        TruncationCheckOptions topt;
        topt.integrator = cfg.integrator();
        const auto v = check_truncation_convergence(p, s, topt);
        const double keep_tail = tail;
        m.truncation = to_json(v);
        m.truncation["max_fock_tail"] = keep_tail;
    } else {
        m.truncation["checked"] = false;
    }
    return traj;
}

inline std::vector<Emission> simulate(const RunConfig& cfg, RunManifest& m) {
    const Trajectory traj = run_ramp(cfg, m);
    std::vector<Emission> out;
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    out.push_back({cfg.out, csv.str()});
    if (cfg.emit_states) {
        std::ostringstream st;
        write_state_snapshot(st, *traj.final_state);
        out.push_back({cfg.out + ".state.txt", st.str()});
    }
    return out;
}

inline std::vector<Emission> wigner(const RunConfig& cfg, RunManifest& m) {
    const Trajectory traj = run_ramp(cfg, m);
    const auto w = field_wigner(reduce_to_field(*traj.final_state), cfg.plane_grid(), cfg.mode());
    m.achieved["integral"] = w.integral();
    m.achieved["negativity_volume"] = negativity_volume(w);
    std::ostringstream os;
    if (cfg.wigner_format == "matrix") write_wigner_matrix(os, w);
    else write_wigner_csv(os, w);
    return {{cfg.out, os.str()}};
}

inline std::vector<Emission> awf(const RunConfig& cfg, RunManifest& m) {
    const Trajectory traj = run_ramp(cfg, m);
    const auto f = agarwal_wigner(reduce_to_qubits(*traj.final_state), SphereGrid(cfg.n_theta, cfg.n_phi));
    m.achieved["integral"] = f.integral();
    m.achieved["max_imag_residual"] = f.max_imag_residual;
    std::ostringstream os;
    write_awf_csv(os, f);
    return {{cfg.out, os.str()}};
}

inline std::vector<Emission> sweep(const RunConfig& cfg, RunManifest& m) {
    const auto result = run_sweep(cfg.sweep());
    int failures = 0;
    for (const auto& r : result.rows) {
        if (r.failed()) {
            ++failures;
            m.messages.push_back("N=" + std::to_string(r.n) + " log2_upsilon=" + format_double(r.log2_upsilon) + " " +
                                 to_string(r.criterion) + ": " + r.error);
        } else if (r.status == OnsetStatus::none) {
            m.messages.push_back("N=" + std::to_string(r.n) + " log2_upsilon=" + format_double(r.log2_upsilon) + " " +
                                 to_string(r.criterion) + ": no squeezing peak");
        }
    }
    m.achieved["rows"] = result.rows.size();
    m.achieved["failed_rows"] = failures;
    m.truncation["checked"] = cfg.verify_truncation;
    for (const auto& [n, v] : result.truncation) m.truncation["N=" + std::to_string(n)] = to_json(v);
    std::ostringstream os;
    write_sweep_csv(os, result);
    return {{cfg.out, os.str()}};
}

inline std::vector<Emission> gap(const RunConfig& cfg, RunManifest& m) {
    const auto scan = gap_scaling_check(cfg.model(), gap_window(cfg.gap_lambda_min, cfg.gap_lambda_max, cfg.gap_lambda_count),
                                        cfg.lambda_c);
    m.achieved["gap_exponent"] = scan.fit.exponent;
    std::ostringstream csv;
    write_gap_csv(csv, scan);
    return {{cfg.out, csv.str()},
            {cfg.out + ".fit.json", fit_report(scan.fit, "gap", cfg.gap_lambda_min - cfg.lambda_c,
                                               cfg.gap_lambda_max - cfg.lambda_c)}};
}

inline std::vector<Emission> fit(const RunConfig& cfg, RunManifest& m) {
    std::ifstream in(cfg.input);
    if (!in) throw std::invalid_argument("invalid 'input': cannot read " + cfg.input);
    const auto table = read_sweep_csv(in);
    const auto crit = onset_criterion_from_string(cfg.criterion);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : table.select(cfg.n, crit))
        if (r.log2_upsilon >= cfg.window_min && r.log2_upsilon <= cfg.window_max)
            pts.emplace_back(std::exp2(r.log2_upsilon), r.lambda_d);
    const auto f = fit_power_law(pts, cfg.lambda_c);
    m.achieved["points"] = f.points_used;
    return {{cfg.out, fit_report(f, "lambda_d - lambda_c", cfg.window_min, cfg.window_max)}};
}

} // namespace detail

/// Runs one subcommand. Returns the process exit code; errors are reported on `err`.
inline int run_command(const RunConfig& cfg, std::ostream& err = std::cerr) {
    RunManifest m;
    m.config = cfg;
    const auto t0 = std::chrono::steady_clock::now();
    m.started = utc_timestamp(std::chrono::system_clock::now());
    std::mutex warn_mutex;
    ScopedWarningHandler capture([&](std::string_view msg) {
        std::lock_guard lock(warn_mutex);
        m.warnings.emplace_back(msg);
        err << "warning: " << msg << '\n';
    });
    OutputSet files;
    try {
        cfg.validate();
        require_writable(cfg.out, "out");
        std::vector<detail::Emission> data;
        if (cfg.subcommand == "simulate") data = detail::simulate(cfg, m);
        else if (cfg.subcommand == "wigner") data = detail::wigner(cfg, m);
        else if (cfg.subcommand == "awf") data = detail::awf(cfg, m);
        else if (cfg.subcommand == "sweep") data = detail::sweep(cfg, m);
        else if (cfg.subcommand == "gap") data = detail::gap(cfg, m);
        else if (cfg.subcommand == "fit") data = detail::fit(cfg, m);

        m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& e : data) m.outputs.push_back(e.path);
        for (const auto& e : data) {
            files.open(e.path) << e.data;
            files.open(manifest_path(e.path)) << m.to_json_for(e.path).dump(2) << '\n';
        }
        files.commit();
    } catch (const std::exception& e) {
        files.discard();
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace dicke::io
