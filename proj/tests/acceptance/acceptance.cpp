// Acceptance run: one PASS/FAIL line per check, non-zero exit if any check fails.
// Optional arguments select checks by name.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/core/initial_state.hpp"
#include "dicke/io/writers.hpp"
#include "dicke/propagation/generators.hpp"
#include "dicke/propagation/oracle.hpp"
#include "dicke/propagation/propagate.hpp"
#include "dicke/quasiprob/agarwal.hpp"
#include "dicke/quasiprob/field_wigner.hpp"
#include "dicke/sweep/gap_scaling.hpp"
#include "dicke/sweep/sweep.hpp"

using namespace dicke;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ModelParams model(int n, int fock, double kappa = 0.0, double nbar = 0.0) {
    ModelParams p;
    p.n_qubits = n;
    p.fock_cutoff = fock;
    p.kappa = kappa;
    p.nbar = nbar;
    return p;
}

QuantumState start(const ModelParams& p) { return initial_state(HilbertSpace(p.n_qubits, p.fock_cutoff), p); }

IntegratorConfig krylov() {
    IntegratorConfig c;
    c.method = IntegratorMethod::krylov_expm;
    return c;
}

double peak(const Trajectory& t, double ObservableRecord::*col) {
    double m = -INFINITY;
    for (const auto& s : t.samples) m = std::max(m, s.record.*col);
    return m;
}

Outcome oracle_equivalence() {
    const auto p = model(2, 8);
    const RampSchedule s{1.0, 0.0, 2.0, 11};
    const auto init = start(p);
    const auto traj = propagate_unitary(init, p, s);
    const auto ref = dense_oracle_propagate(init, p, s, 4096);
    const double f = std::norm(ref.vector().dot(traj.final_state->vector()));
    return {f >= 1.0 - 1e-8, fmt("infidelity %.3e", 1.0 - f)};
}

Trajectory identity_run() {
    static const Trajectory t = [] {
        const auto p = model(8, 48);
        return propagate_unitary(start(p), p, RampSchedule{std::exp2(-3.0), 0.0, 2.0, 201});
    }();
    return t;
}

Outcome concurrence_identity() {
    const auto t = identity_run();
    double worst = 0.0;
    int used = 0;
    for (const auto& s : t.samples) {
        if (s.record.concurrence <= 1e-8) continue;
        ++used;
        worst = std::max(worst, std::abs(7.0 * s.record.concurrence - s.record.spin_sq));
    }
    return {used > 0 && worst < 1e-6, fmt("max |(N-1)c_W - (1-xi^2)| = %.3e over %d samples", worst, used)};
}

Outcome parity_conservation() {
    const auto t = identity_run();
    double worst = 0.0;
    for (const auto& s : t.samples) worst = std::max(worst, std::abs(s.record.parity - 1.0));
    return {worst < 1e-8, fmt("max |<Pi> - 1| = %.3e", worst)};
}

Outcome scaling_law() {
    SweepConfig c;
    c.n_list = {12, 16};
    c.log2_upsilon_list = {0, 1, 2, 3, 4};
    c.criteria = {OnsetCriterion::qubit_op_threshold, OnsetCriterion::field_op_threshold};
    c.lambda_end = 10.0;  // fast ramps cross the thresholds well past λ = 2
    c.sample_count = 1001;
    c.stop_after_onsets = true;
    c.fock_cutoffs = {{12, 120}, {16, 160}};
    const auto r = run_sweep(c);
    bool ok = true;
    std::string detail;
    for (int n : c.n_list) {
        for (const auto& row : r.rows)
            if (row.n == n && row.status != OnsetStatus::found) ok = false;
        const auto q = fit_sweep(r, n, OnsetCriterion::qubit_op_threshold);
        const auto f = fit_sweep(r, n, OnsetCriterion::field_op_threshold);
        ok = ok && q.exponent >= 0.57 && q.exponent <= 0.77 && q.r_squared >= 0.98 &&
             std::abs(f.exponent - q.exponent) <= 0.05;
        detail += fmt("N=%d qubit %.4f (r2 %.4f) field %.4f (r2 %.4f); ", n, q.exponent, q.r_squared, f.exponent,
                      f.r_squared);
    }
    return {ok, detail};
}

Outcome squeezing_magnification() {
    const auto p = model(16, 200);
    const auto fast = propagate_unitary(start(p), p, RampSchedule{std::exp2(-2.0), 0.0, 2.0, 401}, krylov());
    const auto slow = propagate_unitary(start(p), p, RampSchedule{std::exp2(-7.0), 0.0, 2.0, 401}, krylov());
    const double a = peak(fast, &ObservableRecord::spin_sq), b = peak(slow, &ObservableRecord::spin_sq);
    return {a >= 2.0 * b, fmt("peak %.4f vs adiabatic %.4f, ratio %.3f", a, b, a / b)};
}

Outcome size_collapse() {
    std::vector<std::vector<double>> curves;
    for (auto [n, fock] : {std::pair{8, 100}, std::pair{12, 120}, std::pair{16, 160}}) {
        const auto p = model(n, fock);
        const auto t = propagate_unitary(start(p), p, RampSchedule{std::exp2(-3.86), 0.0, 2.0, 401}, krylov());
        std::vector<double> op;
        for (const auto& s : t.samples) op.push_back(s.record.qubit_op);
        curves.push_back(op);
    }
    double sup = 0.0;
    for (std::size_t a = 0; a < curves.size(); ++a)
        for (std::size_t b = a + 1; b < curves.size(); ++b)
            for (std::size_t k = 0; k < curves[a].size(); ++k) sup = std::max(sup, std::abs(curves[a][k] - curves[b][k]));
    return {sup <= 0.05, fmt("sup distance %.4f", sup)};
}

Outcome lindblad_correctness() {
    // free-mode photon decay
    auto p = model(1, 4, 1.0);
    p.epsilon = p.omega = 0.0;
    const HilbertSpace sp(1, 4);
    LindbladGenerator gen(sp, p);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sp.dim(), sp.dim());
    rho(sp.composite(0, 1), sp.composite(0, 1)) = 1.0;
    auto rhs = [&](double, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) { gen(0.0, y, dy); };
    auto st = make_dopri5(rhs, 0.0, rho, 1e-9, 1e-11);
    double decay = 0.0;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        st.advance_to(t);
        decay = std::max(decay, std::abs(st.state()(sp.composite(0, 1), sp.composite(0, 1)).real() - std::exp(-2.0 * t)));
    }

    const auto pd = model(8, 24, 0.1);
    const auto damped = propagate_lindblad(start(pd), pd, RampSchedule{1.0, 0.0, 2.0, 41});
    const double drift = damped.stats.max_norm_drift;

    const auto pu = model(4, 24);
    const RampSchedule s{1.0, 0.0, 2.0, 41};
    const auto u = propagate_unitary(start(pu), pu, s);
    const auto l = propagate_lindblad(start(pu).to_density(), pu, s);
    double diff = 0.0;
    for (std::size_t k = 0; k < u.samples.size(); ++k) {
        const auto a = u.samples[k].record.values(), b = l.samples[k].record.values();
        for (std::size_t c = 0; c < a.size(); ++c) diff = std::max(diff, std::abs(a[c] - b[c]));
    }
    return {decay < 1e-6 && drift < 1e-7 && diff < 1e-6,
            fmt("decay error %.3e, trace drift %.3e, unitary vs master equation %.3e", decay, drift, diff)};
}

Outcome dissipative_robustness() {
    // ramp ends at λ = 1.2, past both squeezing peaks
    const RampSchedule s{std::exp2(-3.86), 0.0, 1.2, 241};
    const auto p0 = model(12, 60);
    const auto clean = propagate_unitary(start(p0), p0, s);
    const auto p1 = model(12, 60, 0.01), p2 = model(12, 60, 0.1);
    const auto weak = propagate_lindblad(start(p1), p1, s);
    const auto strong = propagate_lindblad(start(p2), p2, s);
    const double q0 = peak(clean, &ObservableRecord::spin_sq), q1 = peak(weak, &ObservableRecord::spin_sq);
    const double q2 = peak(strong, &ObservableRecord::spin_sq), b2 = peak(strong, &ObservableRecord::field_sq);
    double tail = 0.0;
    for (const auto* t : {&clean, &weak, &strong})
        for (const auto& smp : t->samples) tail = std::max(tail, smp.fock_tail);
    const bool ok = std::abs(q1 - q0) <= 0.2 * q0 && q2 > 1e-4 && b2 > 1e-4;
    return {ok, fmt("qubit peak %.4f (kappa 0) %.4f (0.01) %.4f (0.1); field peak %.4f (0.1); fock tail %.1e", q0, q1,
                    q2, b2, tail)};
}

Outcome quasiprob_goldens() {
    Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(8, 8), one = vac;
    vac(0, 0) = 1.0;
    one(1, 1) = 1.0;
    const double w0 = field_wigner_raw_at(vac, 0.0), w1 = field_wigner_raw_at(one, 0.0);
    const auto w = field_wigner({Subsystem::field, vac}, PlaneGrid{-5, 5, -5, 5, 201, 201});
    const double integral = w.integral();

    const auto p = model(6, 40);
    const auto t = propagate_unitary(start(p), p, RampSchedule{1.0, 0.0, 1.5, 4});
    const auto rq = reduce_to_qubits(*t.final_state);
    const SphereGrid grid(24, 48);
    const auto f = agarwal_wigner(rq, grid);
    double period = 0.0;
    for (int i = 0; i < grid.n_theta(); ++i)
        for (int k = 0; k < grid.n_phi() / 2; ++k)
            period = std::max(period, std::abs(f.values(i, k) - f.values(i, k + grid.n_phi() / 2)));
    const double t00 = std::abs(multipole_expectations(rq)(0, 0) - 1.0 / std::sqrt(7.0));

    const bool ok = std::abs(w0 - 1.0) < 1e-8 && std::abs(w1 + 1.0) < 1e-8 && std::abs(integral - 1.0) < 1e-3 &&
                    period < 1e-9 && t00 < 1e-12;
    return {ok, fmt("W(0) vacuum %.3e, Fock 1 %.3e off; integral %.6f; phi+pi %.1e; T00 %.1e", w0 - 1.0, w1 + 1.0,
                    integral, period, t00)};
}

Outcome gap_exponent() {
    std::vector<double> e;
    for (auto [n, fock] : {std::pair{8, 100}, std::pair{12, 120}, std::pair{16, 160}})
        e.push_back(gap_scaling_check(model(n, fock), gap_window()).fit.exponent);
    const bool ok = e[2] >= 0.35 && e[2] <= 0.65 && std::abs(e[2] - 0.5) < std::abs(e[0] - 0.5);
    return {ok, fmt("exponent N=8 %.4f, N=12 %.4f, N=16 %.4f", e[0], e[1], e[2])};
}

Outcome determinism() {
    SweepConfig c;
    c.n_list = {4, 6};
    c.log2_upsilon_list = {-1, 0, 1, 2};
    c.default_fock_cutoff = 32;
    c.sample_count = 201;
    std::string text[3];
    const int workers[] = {1, 4, 1};
    for (int k = 0; k < 3; ++k) {
        c.workers = workers[k];
        std::ostringstream os;
        io::write_sweep_csv(os, run_sweep(c));
        text[k] = os.str();
    }
    const bool ok = text[0] == text[1] && text[0] == text[2];
    return {ok, fmt("%zu bytes, runs %s", text[0].size(), ok ? "identical" : "differ")};
}

} // namespace

int main(int argc, char** argv) {
    set_warning_handler([](std::string_view) {});
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
        {"oracle_equivalence", oracle_equivalence},
        {"concurrence_squeezing_identity", concurrence_identity},
        {"parity_conservation", parity_conservation},
        {"onset_scaling_law", scaling_law},
        {"squeezing_magnification", squeezing_magnification},
        {"size_collapse", size_collapse},
        {"lindblad_correctness", lindblad_correctness},
        {"dissipative_robustness", dissipative_robustness},
        {"quasiprob_goldens", quasiprob_goldens},
        {"gap_exponent", gap_exponent},
        {"determinism", determinism},
    };
    std::vector<std::string> only(argv + 1, argv + argc);
    int failures = 0;
    for (const auto& [name, fn] : checks) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
