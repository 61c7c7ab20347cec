// Unit tests for the integrators, generators, dense oracle and cutoff check.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/core/initial_state.hpp"
#include "dicke/core/liouvillian.hpp"
#include "dicke/propagation/oracle.hpp"
#include "dicke/propagation/propagate.hpp"
#include "dicke/propagation/truncation.hpp"

using namespace dicke;

namespace {

std::mt19937& rng() {
    static std::mt19937 gen(7);
    return gen;
}

Eigen::VectorXcd random_vector(Index d) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(d);
    for (Index i = 0; i < d; ++i) v[i] = {g(rng()), g(rng())};
    return v.normalized();
}

Eigen::MatrixXcd random_matrix(Index d) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) m(i, j) = {g(rng()), g(rng())};
    return m;
}

ModelParams model(int n, int fock, double kappa = 0.0, double nbar = 0.0) {
    ModelParams p;
    p.n_qubits = n;
    p.fock_cutoff = fock;
    p.kappa = kappa;
    p.nbar = nbar;
    return p;
}

RampSchedule ramp(double upsilon, double l0 = 0.0, double l1 = 2.0, int samples = 21) {
    RampSchedule s;
    s.upsilon = upsilon;
    s.lambda_start = l0;
    s.lambda_end = l1;
    s.sample_count = samples;
    return s;
}

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return std::norm(a.dot(b)); }

QuantumState vacuum(const ModelParams& p) { return initial_state(HilbertSpace(p.n_qubits, p.fock_cutoff), p); }

}  // namespace

TEST(Schedule, SamplesAreUniformInLambda) {
    auto s = ramp(0.25, 0.0, 2.0, 5);
    auto l = s.sample_lambdas();
    auto t = s.sample_times();
    ASSERT_EQ(l.size(), 5u);
    EXPECT_EQ(l.front(), 0.0);
    EXPECT_EQ(l.back(), 2.0);
    EXPECT_DOUBLE_EQ(l[1], 0.5);
    EXPECT_DOUBLE_EQ(t[4], 8.0);
    EXPECT_DOUBLE_EQ(s.duration(), 8.0);
}

TEST(Schedule, RejectsBadValues) {
    EXPECT_THROW(ramp(0.0).validate(), std::invalid_argument);
    EXPECT_THROW(ramp(1.0, 1.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ramp(1.0, 0.0, 2.0, 1).validate(), std::invalid_argument);
    IntegratorConfig c;
    c.rel_tol = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Dopri5, ExponentialAndExactEndpoint) {
    // y' = (i - 0.1 t) y has y = exp(i t - 0.05 t^2)
    auto rhs = [](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy = cplx(-0.1 * t, 1.0) * y; };
    auto st = make_dopri5(rhs, 0.0, Eigen::VectorXcd::Ones(1).eval(), 1e-10, 1e-12);
    for (double t : {0.3, 1.7, 5.0}) {
        st.advance_to(t);
        EXPECT_EQ(st.time(), t);
        EXPECT_LT(std::abs(st.state()[0] - std::exp(cplx(-0.05 * t * t, t))), 1e-8) << t;
    }
    EXPECT_GT(st.stats().accepted, 5);
}

TEST(Dopri5, FifthOrderConvergenceWithFixedSteps) {
    // With loose tolerance and a max_step cap the error drops ~32x per halving of the cap.
    auto rhs = [](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy = cplx(0.0, -1.0) * y; };
    double errs[2];
    for (int i = 0; i < 2; ++i) {
        auto st = make_dopri5(rhs, 0.0, Eigen::VectorXcd::Ones(1).eval(), 1.0, 1.0, 0.2 / (1 << i));
        st.advance_to(4.0);
        errs[i] = std::abs(st.state()[0] - std::exp(cplx(0.0, -4.0)));
    }
    EXPECT_GT(std::log2(errs[0] / errs[1]), 4.5);
}

TEST(Dopri5, StepSizeUnderflowIsReported) {
    // y' = y^2 blows up at t = 1
    auto rhs = [](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy = y.cwiseProduct(y); };
    auto st = make_dopri5(rhs, 0.0, Eigen::VectorXcd::Ones(1).eval(), 1e-9, 1e-11);
    try {
        st.advance_to(2.0);
        FAIL() << "expected underflow";
    } catch (const StepSizeUnderflow& e) {
        EXPECT_NEAR(e.time(), 1.0, 1e-3);
    }
}

TEST(Generators, SchrodingerMatchesHamiltonian) {
    for (auto sector : {ParitySector::full, ParitySector::even, ParitySector::odd}) {
        HilbertSpace sp(3, 7, sector);
        auto p = model(3, 7);
        p.epsilon = 1.3;
        p.omega = 0.7;
        SchrodingerGenerator gen(sp, p);
        auto psi = random_vector(sp.dim());
        Eigen::VectorXcd out(sp.dim());
        gen(0.9, psi, out);
        Eigen::VectorXcd expected = cplx(0, -1) * build_hamiltonian(sp, p, 0.9).apply(psi);
        EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Generators, LindbladMatrixFormMatchesSuperoperator) {
    for (auto [kappa, nbar] : {std::pair{0.0, 0.0}, {0.3, 0.0}, {0.3, 0.2}, {1.1, 2.0}}) {
        HilbertSpace sp(2, 5);
        auto p = model(2, 5, kappa, nbar);
        p.epsilon = 0.8;
        LindbladGenerator gen(sp, p);
        const Eigen::MatrixXcd rho = random_matrix(sp.dim());
        Eigen::MatrixXcd out(sp.dim(), sp.dim());
        gen(0.7, rho, out);
        const Eigen::VectorXcd expected = build_liouvillian(sp, p, 0.7).matrix() * vectorize(rho);
        EXPECT_LT((vectorize(out) - expected).cwiseAbs().maxCoeff(), 1e-12) << kappa << " " << nbar;
    }
}

TEST(Generators, LindbladInSectorWithoutDamping) {
    HilbertSpace sp(4, 6, ParitySector::even);
    auto p = model(4, 6);
    LindbladGenerator gen(sp, p);
    const Eigen::MatrixXcd rho = random_matrix(sp.dim());
    Eigen::MatrixXcd out(sp.dim(), sp.dim());
    gen(1.2, rho, out);
    const Eigen::VectorXcd expected = build_liouvillian(sp, p, 1.2).matrix() * vectorize(rho);
    EXPECT_LT((vectorize(out) - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_THROW(LindbladGenerator(sp, model(4, 6, 0.1)), std::invalid_argument);
}

TEST(Lanczos, MatchesDenseExponential) {
    const Eigen::MatrixXcd m = random_matrix(60);
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    auto v = random_vector(60);
    const Eigen::VectorXcd expected = (cplx(0, -0.3) * h).exp() * v;
    auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { out = h * in; };
    Eigen::VectorXcd got = v;
    ASSERT_TRUE(lanczos_expm(apply, 0.3, got, 40, 1e-13));
    EXPECT_LT((got - expected).norm(), 1e-11);
    Eigen::VectorXcd small = v;
    EXPECT_FALSE(lanczos_expm(apply, 30.0, small, 4, 1e-13));
    EXPECT_EQ(small, v);
}

TEST(Oracle, ConstantLambdaSingleStepEqualsExponential) {
    auto p = model(2, 6);
    HilbertSpace sp(2, 6);
    auto psi = random_vector(sp.dim());
    auto st = dense_oracle_propagate_path(QuantumState::pure(sp, psi), p, [](double) { return 0.8; }, 0.0, 1.7, 1);
    const Eigen::MatrixXcd h = build_hamiltonian(sp, p, 0.8).to_dense();
    const Eigen::VectorXcd expected = (cplx(0, -1.7) * h).exp() * psi;
    EXPECT_LT((st.vector() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Oracle, SecondOrderSelfConvergence) {
    auto p = model(2, 6);
    auto init = vacuum(p);
    auto s = ramp(1.0);
    auto a = dense_oracle_propagate(init, p, s, 64).vector();
    auto b = dense_oracle_propagate(init, p, s, 128).vector();
    auto c = dense_oracle_propagate(init, p, s, 256).vector();
    EXPECT_GE(std::log2((a - b).norm() / (b - c).norm()), 1.95);
}

TEST(Oracle, DimensionLimits) {
    auto p = model(4, 60);
    EXPECT_THROW(dense_oracle_propagate(vacuum(p), p, ramp(1.0), 4), std::length_error);
    auto q = model(4, 20);
    EXPECT_THROW(dense_oracle_propagate(vacuum(q).to_density(), q, ramp(1.0), 4), std::length_error);
}

TEST(Unitary, MatchesDenseOracle) {
    auto p = model(2, 8);
    auto init = vacuum(p);
    auto traj = propagate_unitary(init, p, ramp(1.0));
    auto ref = dense_oracle_propagate(init, p, ramp(1.0), 4096);
    EXPECT_GE(fidelity(traj.final_state->vector(), ref.vector()), 1 - 1e-8);
    EXPECT_LE(traj.stats.max_norm_drift, 1e-8);
    EXPECT_EQ(traj.stats.sector, ParitySector::even);
    EXPECT_TRUE(traj.final_state->space().is_full());
    EXPECT_EQ(traj.samples.front().lambda, 0.0);
    EXPECT_EQ(traj.samples.back().lambda, 2.0);
}

TEST(Unitary, SuddenQuenchBarelyMoves) {
    auto p = model(8, 20);
    auto init = vacuum(p);
    auto traj = propagate_unitary(init, p, ramp(32.0));
    EXPECT_DOUBLE_EQ(traj.samples.back().t, 2.0 / 32.0);
    EXPECT_GE(fidelity(traj.final_state->vector(), init.vector()), 0.9);
}

TEST(Unitary, FixedCouplingConservesEnergy) {
    auto p = model(4, 16);
    HilbertSpace sp(4, 16);
    SchrodingerGenerator gen(sp, p);
    const auto h = build_hamiltonian(sp, p, 0.8);
    const Eigen::VectorXcd psi0 = vacuum(p).vector();
    auto rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { gen(0.8, y, dy); };
    auto st = make_dopri5(rhs, 0.0, psi0, 1e-9, 1e-11);
    const double e0 = psi0.dot(h.apply(psi0)).real();
    for (double t = 1.0; t <= 10.0; t += 1.0) {
        st.advance_to(t);
        EXPECT_NEAR(st.state().dot(h.apply(st.state())).real() / st.state().squaredNorm(), e0, 1e-9);
    }
}

TEST(Unitary, ParityIsConservedInTheFullSpace) {
    auto p = model(3, 20);
    PropagationOptions opt;
    opt.use_parity_sector = false;
    auto full = propagate_unitary(vacuum(p), p, ramp(0.5), {}, opt);
    auto sect = propagate_unitary(vacuum(p), p, ramp(0.5));
    EXPECT_EQ(full.stats.sector, ParitySector::full);
    for (std::size_t k = 0; k < full.samples.size(); ++k) {
        EXPECT_NEAR(full.samples[k].record.parity, 1.0, 1e-8);
        auto a = full.samples[k].record.values();
        auto b = sect.samples[k].record.values();
        for (std::size_t c = 0; c < a.size(); ++c) EXPECT_NEAR(a[c], b[c], 1e-7) << k << " " << c;
    }
}

TEST(Unitary, RejectsDampingAndMixedStates) {
    auto p = model(2, 6, 0.1);
    EXPECT_THROW(propagate_unitary(vacuum(model(2, 6)), p, ramp(1.0)), std::invalid_argument);
    auto q = model(2, 6);
    EXPECT_THROW(propagate_unitary(vacuum(q).to_density(), q, ramp(1.0)), std::invalid_argument);
}

TEST(Unitary, KrylovAgreesWithRungeKutta) {
    auto p = model(4, 16);
    IntegratorConfig kc;
    kc.method = IntegratorMethod::krylov_expm;
    kc.krylov_step = 0.02;
    auto rk = propagate_unitary(vacuum(p), p, ramp(0.5));
    auto kr = propagate_unitary(vacuum(p), p, ramp(0.5), kc);
    EXPECT_GE(fidelity(rk.final_state->vector(), kr.final_state->vector()), 1 - 1e-8);
    EXPECT_GT(kr.stats.accepted_steps, 0);
}

TEST(Unitary, StopConditionTruncatesSampling) {
    auto p = model(2, 8);
    PropagationOptions opt;
    opt.stop_when = [](const ObservableRecord& r) { return r.lambda >= 0.5; };
    opt.storage = StorageMode::states;
    auto traj = propagate_unitary(vacuum(p), p, ramp(1.0, 0.0, 2.0, 21), {}, opt);
    EXPECT_TRUE(traj.stats.stopped_early);
    EXPECT_DOUBLE_EQ(traj.samples.back().lambda, 0.5);
    EXPECT_EQ(traj.samples.size(), 6u);
    EXPECT_DOUBLE_EQ(traj.final_state->lambda(), 0.5);
    ASSERT_TRUE(traj.samples.back().state.has_value());
    EXPECT_EQ(traj.samples.back().state->vector(), traj.final_state->vector());
}

TEST(Unitary, HalvingToleranceBarelyMovesObservables) {
    auto p = model(4, 24);
    IntegratorConfig tight;
    tight.rel_tol = 0.5e-9;
    auto a = propagate_unitary(vacuum(p), p, ramp(0.25)).samples.back().record.values();
    auto b = propagate_unitary(vacuum(p), p, ramp(0.25), tight).samples.back().record.values();
    for (std::size_t c = 0; c < a.size(); ++c) EXPECT_NEAR(a[c], b[c], 1e-7) << c;
}

TEST(Lindblad, UndampedAgreesWithUnitary) {
    auto p = model(2, 8);
    auto u = propagate_unitary(vacuum(p), p, ramp(1.0));
    auto l = propagate_lindblad(vacuum(p), p, ramp(1.0));
    EXPECT_EQ(l.stats.sector, ParitySector::even);
    ASSERT_EQ(u.samples.size(), l.samples.size());
    for (std::size_t k = 0; k < u.samples.size(); ++k) {
        auto a = u.samples[k].record.values();
        auto b = l.samples[k].record.values();
        for (std::size_t c = 0; c < a.size(); ++c) EXPECT_NEAR(a[c], b[c], 1e-7) << k << " " << c;
    }
}

TEST(Lindblad, SinglePhotonDecay) {
    // ε = ω = 0 and λ = 0: H vanishes and p1(t) = exp(-2κt)
    auto p = model(1, 4, 1.0);
    p.epsilon = p.omega = 0.0;
    HilbertSpace sp(1, 4);
    LindbladGenerator gen(sp, p);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sp.dim(), sp.dim());
    rho(sp.composite(0, 1), sp.composite(0, 1)) = 1.0;
    auto rhs = [&](double, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) { gen(0.0, y, dy); };
    auto st = make_dopri5(rhs, 0.0, rho, 1e-9, 1e-11);
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        st.advance_to(t);
        EXPECT_NEAR(st.state()(sp.composite(0, 1), sp.composite(0, 1)).real(), std::exp(-2.0 * t), 1e-6);
    }
}

TEST(Lindblad, ThermalRelaxationOfPhotonNumber) {
    // d<n>/dt = -2κ(<n> - n̄) for a free mode, far from the cutoff
    auto p = model(1, 40, 0.5, 0.3);
    p.epsilon = p.omega = 0.0;
    HilbertSpace sp(1, 40);
    LindbladGenerator gen(sp, p);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sp.dim(), sp.dim());
    rho(sp.composite(0, 2), sp.composite(0, 2)) = 1.0;
    auto rhs = [&](double, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) { gen(0.0, y, dy); };
    auto st = make_dopri5(rhs, 0.0, rho, 1e-9, 1e-11);
    for (double t : {0.3, 1.0, 3.0}) {
        st.advance_to(t);
        const auto nb = field_moments(reduce_to_field(QuantumState::density(sp, st.state()))).n;
        EXPECT_NEAR(nb, 0.3 + 1.7 * std::exp(-t), 1e-7);
    }
}

TEST(Lindblad, DampedRampMatchesDenseOracle) {
    auto p = model(1, 4, 0.2, 0.1);
    ScopedWarningHandler quiet([](std::string_view) {});
    auto init = vacuum(p);
    ASSERT_FALSE(init.is_pure());
    auto s = ramp(0.5, 0.0, 1.0, 5);
    auto traj = propagate_lindblad(init, p, s);
    auto ref = dense_oracle_propagate(init, p, s, 2048);
    EXPECT_LT((traj.final_state->matrix() - ref.matrix()).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE(traj.stats.max_norm_drift, 1e-7);
    EXPECT_GE(traj.stats.min_eigenvalue, -1e-6);
}

TEST(Lindblad, PositivityFailureNamesTheTime) {
    auto p = model(2, 6, 0.1);
    PropagationOptions opt;
    opt.positivity_tol = -0.01;  // demand every eigenvalue above 0.01, which a pure state cannot meet
    try {
        propagate_lindblad(vacuum(p), p, ramp(1.0), {}, opt);
        FAIL() << "expected a positivity failure";
    } catch (const PositivityViolation& e) {
        EXPECT_EQ(e.time(), 0.0);
        EXPECT_NE(std::string(e.what()).find("t=0"), std::string::npos);
    }
}

TEST(Lindblad, RejectsSectorSpaceWithDamping) {
    auto p = model(2, 6, 0.1);
    HilbertSpace even(2, 6, ParitySector::even);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Unit(even.dim(), 0);
    EXPECT_THROW(propagate_lindblad(QuantumState::pure(even, psi), p, ramp(1.0)), std::invalid_argument);
    IntegratorConfig kc;
    kc.method = IntegratorMethod::krylov_expm;
    EXPECT_THROW(propagate_lindblad(vacuum(p), p, ramp(1.0), kc), std::invalid_argument);
}

TEST(Truncation, NoRampIsAlwaysConverged) {
    RampSchedule s = ramp(1.0, 0.0, 0.0);
    for (int fock : {1, 3}) {
        auto v = check_truncation_convergence(model(4, fock), s);
        EXPECT_TRUE(v.converged) << fock;
        EXPECT_EQ(v.recommended_n_max, fock);
    }
}

TEST(Truncation, SmallCutoffFailsAndLargeCutoffPasses) {
    auto s = ramp(0.25, 0.0, 2.0, 41);
    auto low = check_truncation_convergence(model(8, 10), s);
    EXPECT_FALSE(low.converged);
    EXPECT_GT(low.recommended_n_max, 60);
    EXPECT_GT(low.tail_weight, 1e-6);
    auto mid = check_truncation_convergence(model(8, 60), s);
    EXPECT_FALSE(mid.converged);
    auto high = check_truncation_convergence(model(8, 100), s);
    EXPECT_TRUE(high.converged);
    EXPECT_LT(high.tail_weight, 1e-6);
}
