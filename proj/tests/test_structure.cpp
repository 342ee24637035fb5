#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "mhdq/structure.hpp"
#include "mhdq/system.hpp"

using namespace mhdq;

namespace {

Vector8d random_state(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Vector8d U;
    for (int c = 0; c < 8; ++c) U(c) = d(rng);
    return U;
}

int eigen_rank(const Matrix8d& M)
{
    Eigen::SelfAdjointEigenSolver<Matrix8d> es(M);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    return int((es.eigenvalues().array().abs() > 1e-10 * top).count());
}

}  // namespace

TEST_CASE("projectors split the state into N and its complement")
{
    const Matrix8d PN = SubspaceProjector::N().matrix();
    const Matrix8d PP = SubspaceProjector::Nperp().matrix();
    CHECK(PN + PP == Matrix8d::Identity());
    CHECK(PN * PP == Matrix8d::Zero());
    CHECK(PN * PN == PN);
    CHECK(PP(idx::u3, idx::u3) == 1.0);
    CHECK(PP(idx::H3, idx::H3) == 1.0);
    CHECK(PP.trace() == 2.0);
}

TEST_CASE("boundary ranks")
{
    std::mt19937_64 rng(4);
    const auto eos = EquationOfState::exponential(1.0);
    for (int n = 0; n < 100; ++n) {
        Vector8d U = random_state(rng);
        U(idx::u3) = U(idx::H3) = 0.0;
        CHECK(check_boundary_rank(eos, U, BoundaryDescriptor::gamma0()) == 2);
        CHECK(eigen_rank(boundary_matrix(eos, U, BoundaryDescriptor::gamma0())) == 2);

        Vector8d V = random_state(rng);
        V.segment<3>(idx::u1).setZero();
        if (std::abs(V(idx::H1)) < 0.1) V(idx::H1) = 0.5;
        CHECK(check_boundary_rank(eos, V, BoundaryDescriptor::gamma1()) == 6);
        CHECK(eigen_rank(boundary_matrix(eos, V, BoundaryDescriptor::gamma1())) == 6);
    }

    Vector8d degenerate = background_state(0.0);
    degenerate(idx::H2) = 0.3;
    CHECK(check_boundary_rank(eos, degenerate, BoundaryDescriptor::gamma1()) < 6);

    Vector8d bad = background_state(1.0);
    bad(idx::u3) = 0.1;
    CHECK_THROWS_AS(check_boundary_rank(eos, bad, BoundaryDescriptor::gamma0()), PreconditionError);
    CHECK_THROWS_AS(check_boundary_rank(eos, bad, BoundaryDescriptor::gamma1()), PreconditionError);
}

TEST_CASE("boundary form vanishes on N and only there")
{
    std::mt19937_64 rng(9);
    const auto eos = EquationOfState::polytropic(5.0 / 3.0, 1.0);
    for (int n = 0; n < 100; ++n) {
        Vector8d U = random_state(rng);
        U(idx::p) = 0.5 + std::abs(U(idx::p));
        U(idx::u3) = U(idx::H3) = 0.0;
        const Vector8d v = SubspaceProjector::N().apply(random_state(rng));
        CHECK(std::abs(check_boundary_form(eos, U, v)) <= 1e-14);
    }
    // p and u3 together see the nonzero entry of A3.
    Vector8d U = background_state(1.0, 1.0);
    Vector8d v = Vector8d::Zero();
    v(idx::p) = 1.0;
    v(idx::u3) = 1.0;
    const Matrix8d A3 = assemble(eos, State<double>(U)).A[2];
    CHECK(v.dot(A3 * v) == doctest::Approx(2.0));
}

TEST_CASE("Ahat_1,2 keep N and Nperp invariant and Ahat_3 swaps them")
{
    std::mt19937_64 rng(17);
    const auto eos = EquationOfState::exponential(1.0);
    for (int n = 0; n < 50; ++n) {
        const Vector8d U = SubspaceProjector::N().apply(random_state(rng));
        for (int j = 1; j <= 3; ++j) {
            const auto rep = check_geometric_invariance(eos, U, j, true);
            CHECK(rep.max_residual <= 1e-12);
            REQUIRE(rep.derivative.has_value());
        }
        // Direct restatement for j = 3 without the helper.
        const Matrix8d A3 = ahat(eos, U)[2];
        const Matrix8d PN = SubspaceProjector::N().matrix();
        const Matrix8d PP = SubspaceProjector::Nperp().matrix();
        CHECK((PN * A3 * PN).cwiseAbs().maxCoeff() == 0.0);
        CHECK((PP * A3 * PP).cwiseAbs().maxCoeff() == 0.0);
    }
    Vector8d off = background_state(1.0);
    off(idx::H3) = 0.2;
    CHECK_THROWS_AS(check_geometric_invariance(eos, off, 1, false), PreconditionError);
}

TEST_CASE("structure suites are deterministic and pass")
{
    const auto cfg = StructureSuiteConfig::from_samples(100, 7);
    const auto a = run_structure_suites(cfg);
    const auto b = run_structure_suites(cfg);
    CHECK(format_suite_table(a) == format_suite_table(b));
    for (const auto& r : a) {
        INFO(r.name);
        CHECK((r.pass || r.informational));
    }
    const auto c = run_structure_suites(StructureSuiteConfig::from_samples(100, 8));
    CHECK(format_suite_table(a) != format_suite_table(c));
}
