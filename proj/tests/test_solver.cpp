#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mhdq/compat.hpp"
#include "mhdq/datum.hpp"
#include "mhdq/reflection.hpp"
#include "mhdq/solver.hpp"

using namespace mhdq;

namespace {

const EquationOfState eos = EquationOfState::exponential(1.0);

InitialDatum bump_datum(std::array<int, 3> n)
{
    DatumRecipe r;
    r.preset = "interior-bump";
    return make_admissible_datum(eos, Grid::quarter({1.0, 0.5, 1.0}, n), r);
}

}  // namespace

TEST_CASE("ghost filling")
{
    const Grid g = Grid::quarter({1.0, 0.5, 1.0}, {8, 4, 8});
    const Vector8d bg = background_state(1.0);
    Field f(g, bg);
    apply_bc(f);
    for (int k = -2; k < 10; ++k)
        for (int j = -2; j < 6; ++j)
            for (int i = -2; i < 10; ++i) CHECK(Vector8d(f.at(i, j, k)) == bg);

    // Uniform u1 = 1 violates the x1 wall: the ghost flips it, so the
    // face average vanishes.
    f.for_each_cell([&](int i, int j, int k) { f(i, j, k, idx::u1) = 1.0; });
    apply_bc(f);
    CHECK(f(-1, 1, 3, idx::u1) == -1.0);
    CHECK(f(-1, 1, 3, idx::u1) + f(0, 1, 3, idx::u1) == 0.0);
    CHECK(f(8, 1, 3, idx::u1) == -1.0);
    // x3 walls leave u1 even; x2 wraps.
    CHECK(f(3, 1, -1, idx::u1) == 1.0);

    Field s(g);
    s.for_each_cell([&](int i, int j, int k) {
        for (int c = 0; c < 8; ++c) s(i, j, k, c) = 100 * c + 10 * i + j + 0.01 * k;
    });
    apply_bc(s);
    CHECK(s(2, -1, 3, idx::p) == s(2, 3, 3, idx::p));
    CHECK(s(2, 4, 3, idx::p) == s(2, 0, 3, idx::p));
    CHECK(s(2, 1, -2, idx::H3) == -s(2, 1, 1, idx::H3));
    CHECK(s(2, 1, -2, idx::H1) == s(2, 1, 1, idx::H1));
    CHECK(s(2, 1, 9, idx::u3) == -s(2, 1, 6, idx::u3));
}

TEST_CASE("constant states are fixed points bit for bit")
{
    const Grid g = Grid::quarter({1.0, 0.5, 1.0}, {16, 8, 16});
    RunState rs{0.0, Field(g, background_state(-0.7, 0.3)), 0, {}};
    const Field before = rs.field;
    SolverOptions opts;
    opts.epsilon = 0.05;
    for (int n = 0; n < 5; ++n) step(eos, rs, 0.5 * stable_dt(eos, rs.field, opts), opts);
    CHECK(bitwise_equal_interior(before, rs.field));

    const auto d = diagnostics(eos, rs.field, background_state(-0.7, 0.3));
    CHECK(d.divH_max == 0.0);
    CHECK(d.sobolev[3] == 0.0);
    CHECK(d.trace_u3 == 0.0);
}

TEST_CASE("one step on the half box commutes with the mirror")
{
    const InitialDatum d = bump_datum({16, 8, 16});
    RunState rs{0.0, extend(d.field), 0, {}};
    const SolverOptions opts;
    for (int n = 0; n < 3; ++n) step(eos, rs, stable_dt(eos, rs.field, opts), opts);
    CHECK(parity_defect(rs.field).maxCoeff() == 0.0);
}

TEST_CASE("quarter and half boxes agree bit for bit")
{
    const InitialDatum d = bump_datum({16, 8, 16});
    const SolverOptions opts;
    RunState q{0.0, d.field, 0, {}};
    RunState h{0.0, extend(d.field), 0, {}};
    apply_bc(q.field);
    apply_bc(h.field);
    for (int n = 0; n < 5; ++n) {
        const double dt = stable_dt(eos, q.field, opts);
        CHECK(dt == stable_dt(eos, h.field, opts));
        step(eos, q, dt, opts);
        step(eos, h, dt, opts);
    }
    CHECK(bitwise_equal_interior(restrict(h.field), q.field));
}

TEST_CASE("worker count does not change the right-hand side")
{
    Field f = bump_datum({16, 8, 16}).field;
    apply_bc(f);
    SolverOptions one, four;
    four.workers = 4;
    CHECK(bitwise_equal_interior(semi_discrete_rhs(eos, f, one), semi_discrete_rhs(eos, f, four)));
}

TEST_CASE("CFL violations are rejected")
{
    const InitialDatum d = bump_datum({16, 8, 16});
    RunState rs{0.0, d.field, 0, {}};
    apply_bc(rs.field);
    const SolverOptions opts;
    CHECK_THROWS_AS(step(eos, rs, 1.5 * stable_dt(eos, rs.field, opts), opts), CflError);
}

TEST_CASE("energy of a rigid flow")
{
    const Grid g = Grid::periodic({1.0, 2.0, 0.5}, {4, 4, 4});
    Vector8d U = make_state(0.2, Vector3d(0.3, -0.4, 1.2), Vector3d::Zero(), 0.1);
    const Field f(g, U);
    const double rho = std::exp(0.2 - 0.1);
    const auto d = diagnostics(eos, f, U);
    CHECK(d.energy == doctest::Approx(0.5 * rho * (0.09 + 0.16 + 1.44) * 1.0).epsilon(1e-13));
}

TEST_CASE("div H of a sampled curl converges at fourth order")
{
    std::array<double, 2> div{};
    for (int level = 0; level < 2; ++level) {
        const int n = 32 << level;
        div[std::size_t(level)] = divergence_max(bump_datum({n, n / 2, n}).field);
    }
    CHECK(div[0] / div[1] > 12.0);
}

TEST_CASE("stability smoke run")
{
    DatumRecipe r;
    r.preset = "interior-bump";
    r.width = 0.2;
    const auto d = make_admissible_datum(eos, Grid::quarter({0.5, 0.5, 0.5}, {16, 16, 16}), r);
    SolverOptions opts;
    opts.cfl = 0.5;
    opts.epsilon = 0.05;
    RunControl c;
    c.t_end = 1e9;
    c.max_steps = 500;
    c.output_every = 100;
    const auto res = integrate(eos, d.field, d.background, opts, c);
    CHECK(res.state.steps == 500);
    const double h3_0 = res.state.history.front().sobolev[3];
    for (const auto& rec : res.state.history) {
        CHECK(std::isfinite(rec.sobolev[3]));
        CHECK(rec.sobolev[3] <= 2.0 * h3_0);
    }
}

TEST_CASE("replayed dt sequences reproduce a run")
{
    const InitialDatum d = bump_datum({16, 8, 16});
    const SolverOptions opts;
    RunControl c;
    c.t_end = 0.2;
    const auto first = integrate(eos, d.field, d.background, opts, c);
    RunControl replay;
    replay.dt_sequence = &first.dts;
    const auto second = integrate(eos, d.field, d.background, opts, replay);
    CHECK(bitwise_equal_interior(first.state.field, second.state.field));
    CHECK(first.state.t == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(first.state.history.size() == second.state.history.size());
}

TEST_CASE("formal time derivatives match solver differencing in time")
{
    // Smooth periodic data along x1: the second time derivative from the
    // quasilinear formula against (U(dt) - 2 U(0) + U(-dt)) / dt^2 built
    // from solver steps without dissipation.
    const Grid g = Grid::periodic({1.0, 0.25, 0.25}, {256, 4, 4});
    const Vector8d bg = background_state(1.0);
    Field f(g, bg);
    f.for_each_cell([&](int i, int j, int k) {
        const double x = 2 * std::numbers::pi * g.center(0, i);
        f(i, j, k, idx::p) = 0.05 * std::sin(x);
        f(i, j, k, idx::u1) = 0.03 * std::cos(x);
        f(i, j, k, idx::u2) = 0.02 * std::sin(2 * x);
        f(i, j, k, idx::H2) = 0.04 * std::cos(x);
        f(i, j, k, idx::S) = 0.01 * std::sin(x);
    });
    const auto derivs = time_derivatives(eos, InitialDatum{f, bg}, 2);

    SolverOptions opts;
    opts.epsilon = 0.0;
    Field f0 = f;
    apply_bc(f0);
    const Field r = semi_discrete_rhs(eos, f0, opts);
    double err1 = 0.0, mag1 = 0.0;
    f.for_each_cell([&](int i, int j, int k) {
        err1 = std::max(err1, (Vector8d(r.at(i, j, k)) - Vector8d(derivs[1].at(i, j, k))).cwiseAbs().maxCoeff());
        mag1 = std::max(mag1, Vector8d(derivs[1].at(i, j, k)).cwiseAbs().maxCoeff());
    });
    CHECK(err1 <= 1e-8 * mag1);

    // Ideal MHD is reversible: U(-t) is the forward evolution of the state
    // with u flipped, flipped back. Without dissipation the scheme keeps
    // that symmetry.
    const double dt = 1e-4;
    Vector8d flip = Vector8d::Ones();
    flip(idx::u1) = flip(idx::u2) = flip(idx::u3) = -1.0;
    auto flipped = [&](const Field& in) {
        Field out = in;
        out.for_each_cell([&](int i, int j, int k) { out.at(i, j, k) = flip.cwiseProduct(Vector8d(in.at(i, j, k))); });
        apply_bc(out);
        return out;
    };
    RunState fwd{0.0, f0, 0, {}};
    step(eos, fwd, dt, opts);
    RunState rev{0.0, flipped(f0), 0, {}};
    step(eos, rev, dt, opts);
    const Field back = flipped(rev.field);

    double err2 = 0.0, mag2 = 0.0;
    f.for_each_cell([&](int i, int j, int k) {
        const Vector8d fd = (Vector8d(fwd.field.at(i, j, k)) - 2.0 * Vector8d(f.at(i, j, k)) + Vector8d(back.at(i, j, k))) / (dt * dt);
        err2 = std::max(err2, (fd - Vector8d(derivs[2].at(i, j, k))).cwiseAbs().maxCoeff());
        mag2 = std::max(mag2, Vector8d(derivs[2].at(i, j, k)).cwiseAbs().maxCoeff());
    });
    CHECK(err2 <= 1e-5 * mag2);
}
