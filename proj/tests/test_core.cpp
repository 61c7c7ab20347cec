// Unit tests for the core-model operators, states and spectrum.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dicke/core/initial_state.hpp"
#include "dicke/core/liouvillian.hpp"
#include "dicke/core/operators.hpp"
#include "dicke/core/spectrum.hpp"

using namespace dicke;

namespace {

ModelParams make_params(int n, int fock, double kappa = 0.0, double nbar = 0.0) {
    ModelParams p;
    p.n_qubits = n;
    p.fock_cutoff = fock;
    p.kappa = kappa;
    p.nbar = nbar;
    return p;
}

Eigen::MatrixXcd random_hermitian(Index d, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
    return 0.5 * (m + m.adjoint());
}

Eigen::MatrixXcd random_density(Index d, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
    Eigen::MatrixXcd rho = m * m.adjoint();
    return rho / rho.trace();
}

}  // namespace

TEST(HilbertSpace, IndexMapIsBijective) {
    HilbertSpace space(3, 5);
    EXPECT_EQ(space.dim(), 20);
    for (Index i = 0; i < space.dim(); ++i) {
        EXPECT_EQ(space.composite(space.spin_label(i), space.fock_label(i)), i);
    }
}

TEST(HilbertSpace, ParitySectorsPartitionTheProductBasis) {
    HilbertSpace even(4, 7, ParitySector::even), odd(4, 7, ParitySector::odd);
    EXPECT_EQ(even.dim() + odd.dim(), 35);
    for (Index k = 0; k < even.dim(); ++k) {
        const Index p = even.product_index(k);
        EXPECT_EQ(parity_of(even.spin_label(p), even.fock_label(p)), 1);
        EXPECT_EQ(even.local_index(p), k);
        EXPECT_FALSE(odd.local_index(p).has_value());
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(even.dim());
    EXPECT_LT((even.restrict(even.embed(v)) - v).norm(), 1e-15);
}

TEST(SparseOperator, AssemblySumsDuplicatesAndDropsZeros) {
    std::vector<SparseOperator::Entry> e{{0, 1, 1.0}, {0, 1, 2.0}, {1, 0, 0.0}, {1, 1, cplx(0, 1)}, {1, 1, cplx(0, -1)}};
    auto op = SparseOperator::from_entries(2, 2, e);
    EXPECT_EQ(op.nnz(), 1);
    EXPECT_EQ(op.coeff(0, 1), cplx(3.0, 0.0));
}

TEST(SparseOperator, HermitianFlagIsChecked) {
    std::vector<SparseOperator::Entry> e{{0, 1, 1.0}};
    EXPECT_THROW(SparseOperator::from_entries(2, 2, e, true), std::invalid_argument);
}

TEST(SpinOperators, SingleSpinJz) {
    HilbertSpace space(1, 1);
    auto ops = build_spin_operators(space);
    EXPECT_EQ(ops.Jz.coeff(0, 0), cplx(-0.5));
    EXPECT_EQ(ops.Jz.coeff(1, 1), cplx(0.5));
}

TEST(SpinOperators, LadderElementForSpinOne) {
    HilbertSpace space(2, 1);
    auto ops = build_spin_operators(space);
    // <m=0| J+ |m=-1> = sqrt(j(j+1) - m(m+1)) with j=1, m=-1
    EXPECT_NEAR(ops.Jplus.coeff(1, 0).real(), std::sqrt(2.0), 1e-15);
}

TEST(SpinOperators, Su2Algebra) {
    for (int n : {1, 2, 5, 8, 13}) {
        HilbertSpace space(n, 3);
        auto s = build_spin_operators(space);
        EXPECT_LT(max_abs_difference(commutator(s.Jz, s.Jplus), s.Jplus), 1e-13) << n;
        EXPECT_LT(max_abs_difference(commutator(s.Jz, s.Jminus), -1.0 * s.Jminus), 1e-13) << n;
        EXPECT_LT(max_abs_difference(commutator(s.Jplus, s.Jminus), 2.0 * s.Jz), 1e-13) << n;
        EXPECT_LT(max_abs_difference(s.Jx, 0.5 * (s.Jplus + s.Jminus)), 1e-15);
    }
}

TEST(SpinOperators, RejectParitySectors) {
    EXPECT_THROW(build_spin_operators(HilbertSpace(2, 3, ParitySector::even)), std::invalid_argument);
    EXPECT_THROW(build_field_operators(HilbertSpace(2, 3, ParitySector::odd)), std::invalid_argument);
}

TEST(FieldOperators, TwoLevelAnnihilator) {
    HilbertSpace space(1, 2);
    auto f = build_field_operators(space);
    // spin block s=0: a = [[0,1],[0,0]]
    EXPECT_EQ(f.a.coeff(0, 1), cplx(1.0));
    EXPECT_EQ(f.a.coeff(1, 0), cplx(0.0));
    EXPECT_EQ(f.a.coeff(0, 0), cplx(0.0));
}

TEST(FieldOperators, CreationElement) {
    HilbertSpace space(1, 6);
    auto f = build_field_operators(space);
    EXPECT_NEAR(f.adag.coeff(space.composite(0, 3), space.composite(0, 2)).real(), std::sqrt(3.0), 1e-15);
    EXPECT_LT(max_abs_difference(f.number, f.adag * f.a), 1e-14);
}

TEST(FieldOperators, CanonicalCommutatorUpToCutoffCorner) {
    const int nmax = 6;
    HilbertSpace space(2, nmax);
    auto f = build_field_operators(space);
    Eigen::MatrixXcd c = commutator(f.a, f.adag).to_dense();
    for (Index i = 0; i < space.dim(); ++i) {
        const bool corner = space.fock_label(i) == nmax - 1;
        EXPECT_NEAR(c(i, i).real(), corner ? -(nmax - 1.0) : 1.0, 1e-13);
    }
    c.diagonal().setZero();
    EXPECT_LT(c.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian, DecoupledGroundState) {
    auto p = make_params(5, 4);
    HilbertSpace space(5, 4);
    Eigen::MatrixXcd h = build_hamiltonian(space, p, 0.0).to_dense();
    EXPECT_TRUE(h.isDiagonal(0.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    EXPECT_NEAR(es.eigenvalues()[0], -2.5, 1e-15);
    EXPECT_NEAR(h(0, 0).real(), -2.5, 1e-15);
}

TEST(Hamiltonian, HandAssembledSingleQubitTwoPhotonLevels) {
    // basis (s,n): (0,0) (0,1) (1,0) (1,1); diag eps*m + omega*n;
    // coupling 2*0.5/sqrt(1) * <1|Jx|0> * <n'|a+a†|n> = 0.5
    Eigen::Matrix4cd expected;
    expected << -0.5, 0, 0, 0.5,
                0, 0.5, 0.5, 0,
                0, 0.5, 0.5, 0,
                0.5, 0, 0, 1.5;
    Eigen::MatrixXcd h = build_hamiltonian(HilbertSpace(1, 2), make_params(1, 2), 0.5).to_dense();
    EXPECT_LT((h - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian, Hermitian) {
    for (double lam : {0.0, 0.3, 0.7, 2.0}) {
        auto h = build_hamiltonian(HilbertSpace(6, 9), make_params(6, 9), lam);
        EXPECT_LT(h.hermitian_defect(), 1e-14);
    }
    EXPECT_THROW(build_hamiltonian(HilbertSpace(2, 2), make_params(2, 2), -0.1), std::invalid_argument);
}

TEST(Hamiltonian, SectorBlockMatchesFullSpace) {
    HilbertSpace full(4, 6);
    auto p = make_params(4, 6);
    Eigen::MatrixXcd hf = build_hamiltonian(full, p, 0.9).to_dense();
    for (auto sector : {ParitySector::even, ParitySector::odd}) {
        HilbertSpace sub = full.restricted(sector);
        Eigen::MatrixXcd hs = build_hamiltonian(sub, p, 0.9).to_dense();
        EXPECT_LT((hs - sub.restrict(hf)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Parity, EigenvaluesOfLowStates) {
    HilbertSpace space(4, 12);
    auto pi = build_parity_operator(space);
    EXPECT_EQ(pi.coeff(space.composite(0, 0), space.composite(0, 0)), cplx(1.0));
    EXPECT_EQ(pi.coeff(space.composite(1, 0), space.composite(1, 0)), cplx(-1.0));
    EXPECT_LT(max_abs_difference(pi * pi, SparseOperator::identity(space.dim())), 1e-15);
}

TEST(Parity, CommutesWithHamiltonian) {
    HilbertSpace space(4, 12);
    auto h = build_hamiltonian(space, make_params(4, 12), 0.7);
    auto pi = build_parity_operator(space);
    EXPECT_LT(commutator(h, pi).max_abs(), 1e-13);
}

TEST(Parity, CommutesWithHamiltonianForAllSmallSizes) {
    for (int n = 1; n <= 20; ++n) {
        HilbertSpace space(n, 6);
        auto parts = build_hamiltonian_parts(space, make_params(n, 6));
        auto pi = build_parity_operator(space);
        for (double lam : {0.0, 0.5, 1.1, 2.0}) {
            EXPECT_LT(commutator(parts.at(lam), pi).max_abs(), 1e-12) << "N=" << n << " lambda=" << lam;
        }
    }
}

TEST(Liouvillian, UnitaryLimitIsCommutator) {
    std::mt19937 rng(7);
    HilbertSpace space(2, 4);
    auto p = make_params(2, 4);
    auto L = build_liouvillian(space, p, 0.6);
    Eigen::MatrixXcd h = build_hamiltonian(space, p, 0.6).to_dense();
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd rho = random_hermitian(space.dim(), rng);
        Eigen::MatrixXcd expected = cplx(0, -1) * (h * rho - rho * h);
        Eigen::MatrixXcd got = unvectorize(L.apply(vectorize(rho)), space.dim());
        EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-11);
    }
}

TEST(Liouvillian, SingleModeDecayByHand) {
    // H = 0 (eps = omega = 0, lambda = 0); rho = |s=0><s=0| ⊗ |1><1|
    ModelParams p = make_params(1, 3, 1.0, 0.0);
    p.epsilon = p.omega = 0.0;
    HilbertSpace space(1, 3);
    auto L = build_liouvillian(space, p, 0.0);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    rho(space.composite(0, 1), space.composite(0, 1)) = 1.0;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    expected(space.composite(0, 0), space.composite(0, 0)) = 2.0;
    expected(space.composite(0, 1), space.composite(0, 1)) = -2.0;
    Eigen::MatrixXcd got = unvectorize(L.apply(vectorize(rho)), space.dim());
    EXPECT_EQ((got - expected).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Liouvillian, GeneratorIsTraceless) {
    std::mt19937 rng(11);
    HilbertSpace space(2, 5);
    for (double nbar : {0.0, 0.3}) {
        auto L = build_liouvillian(space, make_params(2, 5, 0.4, nbar), 1.2);
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXcd rho = random_density(space.dim(), rng);
            Eigen::MatrixXcd d = unvectorize(L.apply(vectorize(rho)), space.dim());
            EXPECT_LT(std::abs(d.trace()), 1e-12);
        }
    }
}

TEST(Liouvillian, RejectsSectorSpaceWithDamping) {
    EXPECT_THROW(build_liouvillian(HilbertSpace(2, 4, ParitySector::even), make_params(2, 4, 0.1), 0.5),
                 std::invalid_argument);
    EXPECT_NO_THROW(build_liouvillian(HilbertSpace(2, 4, ParitySector::even), make_params(2, 4, 0.0), 0.5));
}

TEST(InitialState, VacuumGroundState) {
    HilbertSpace space(6, 5);
    auto st = initial_state(space, make_params(6, 5));
    ASSERT_TRUE(st.is_pure());
    auto s = build_spin_operators(space);
    auto f = build_field_operators(space);
    auto pi = build_parity_operator(space);
    const auto& v = st.vector();
    EXPECT_NEAR(v.dot(s.Jz.apply(v)).real(), -3.0, 1e-15);
    EXPECT_NEAR(v.dot(f.number.apply(v)).real(), 0.0, 1e-15);
    EXPECT_NEAR(v.dot(pi.apply(v)).real(), 1.0, 1e-15);
    EXPECT_NEAR(st.trace(), 1.0, 1e-12);
}

TEST(InitialState, ThermalMeanOccupation) {
    HilbertSpace space(2, 30);
    auto st = initial_state(space, make_params(2, 30, 0.0, 0.1));
    ASSERT_FALSE(st.is_pure());
    auto f = build_field_operators(space);
    const double mean = (f.number.to_dense() * st.matrix()).trace().real();
    EXPECT_NEAR(mean, 0.1, 1e-10);
    EXPECT_NEAR(st.trace(), 1.0, 1e-12);
    EXPECT_NO_THROW(st.validate());
}

TEST(InitialState, WarnsOnHeavyThermalTail) {
    int warnings = 0;
    ScopedWarningHandler guard([&](std::string_view) { ++warnings; });
    HilbertSpace space(1, 4);
    auto st = initial_state(space, make_params(1, 4, 0.0, 2.0));
    EXPECT_EQ(warnings, 1);
    EXPECT_NEAR(st.trace(), 1.0, 1e-12);
}

TEST(SpectralGap, DecoupledEvenGapIsTwoQuanta) {
    HilbertSpace space(6, 10);
    EXPECT_NEAR(spectral_gap(space, make_params(6, 10), 0.0), 2.0, 1e-12);
}

TEST(SpectralGap, GrowsInOrderedPhase) {
    HilbertSpace space(8, 60);
    auto p = make_params(8, 60);
    EXPECT_GT(spectral_gap(space, p, 1.0), spectral_gap(space, p, 0.8));
}

TEST(SpectralGap, PositiveAcrossRamp) {
    HilbertSpace space(6, 40);
    auto p = make_params(6, 40);
    for (double lam = 0.0; lam <= 2.0 + 1e-12; lam += 0.1) EXPECT_GT(spectral_gap(space, p, lam), 0.0) << lam;
}

TEST(SpectralGap, DimensionLimit) {
    EXPECT_THROW(spectral_gap(HilbertSpace(4, 40), make_params(4, 40), 0.5, 50), std::length_error);
}
