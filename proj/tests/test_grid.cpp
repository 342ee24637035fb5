#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mhdq/parallel.hpp"
#include "mhdq/reflection.hpp"
#include "mhdq/stencil.hpp"

using namespace mhdq;

namespace {

// Smooth data with no particular symmetry.
Field sample_field(const Grid& g)
{
    Field f(g);
    f.for_each_cell([&](int i, int j, int k) {
        const Vector3d x = g.center(i, j, k);
        for (int c = 0; c < 8; ++c)
            f(i, j, k, c) = std::sin(1.3 * x(0) + 0.7 * c) * std::cos(2.1 * x(2) - 0.3 * c) + 0.1 * c * x(1);
    });
    return f;
}

}  // namespace

TEST_CASE("finite-difference weights")
{
    const std::vector<double> nodes{-2, -1, 0, 1, 2};
    const auto w1 = fd_weights(0.0, nodes, 1);
    const std::vector<double> expect1{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
    for (std::size_t n = 0; n < 5; ++n) CHECK(w1[n] == doctest::Approx(expect1[n]).epsilon(1e-14));
    const auto w4 = fd_weights(0.0, nodes, 4);
    const std::vector<double> expect4{1, -4, 6, -4, 1};
    for (std::size_t n = 0; n < 5; ++n) CHECK(w4[n] == doctest::Approx(expect4[n]).epsilon(1e-12));

    // Face interpolation from four centers is exact on cubics.
    const auto wf = face_weights(4, 0);
    for (int deg = 0; deg <= 3; ++deg) {
        double s = 0.0;
        for (int n = 0; n < 4; ++n) s += wf[std::size_t(n)] * std::pow(n + 0.5, deg);
        CHECK(s == doctest::Approx(deg == 0 ? 1.0 : 0.0).epsilon(1e-13));
    }
}

TEST_CASE("axis derivative is exact on quartics, walls included")
{
    const Grid g = Grid::quarter({1.0, 0.5, 1.0}, {12, 6, 10});
    Field f(g);
    f.for_each_cell([&](int i, int j, int k) {
        const Vector3d x = g.center(i, j, k);
        f(i, j, k, 0) = std::pow(x(0), 4) - 2 * x(0);
        f(i, j, k, 7) = std::pow(x(2), 3) + 5.0;
    });
    const Field d0 = axis_derivative(f, 0, 5);
    const Field d2 = axis_derivative(f, 2, 5);
    f.for_each_cell([&](int i, int j, int k) {
        const Vector3d x = g.center(i, j, k);
        CHECK(d0(i, j, k, 0) == doctest::Approx(4 * std::pow(x(0), 3) - 2).epsilon(1e-10));
        CHECK(d2(i, j, k, 7) == doctest::Approx(3 * x(2) * x(2)).epsilon(1e-10));
        CHECK(d0(i, j, k, 7) == 0.0);
    });
}

TEST_CASE("extend and restrict")
{
    const Grid q = Grid::quarter({1.0, 0.5, 1.0}, {8, 4, 6});
    const Field f = sample_field(q);
    const Field half = extend(f);
    CHECK(half.grid().cells[2] == 12);
    CHECK(half.grid().origin[2] == -1.0);
    CHECK(bitwise_equal_interior(restrict(half), f));
    CHECK(parity_defect(half).maxCoeff() == 0.0);
    CHECK(bitwise_equal_interior(mirror(half), half));
    CHECK_FALSE(find_parity_witness(half).found);

    // u3 odd, p even across the plane.
    CHECK(half(2, 1, 5, idx::u3) == -half(2, 1, 6, idx::u3));
    CHECK(half(2, 1, 5, idx::p) == half(2, 1, 6, idx::p));

    Field tampered = half;
    tampered(3, 2, 1, idx::H3) += 1e-9;
    CHECK(parity_defect(tampered)(idx::H3) == doctest::Approx(1e-9).epsilon(1e-6));
    const auto w = find_parity_witness(tampered);
    CHECK(w.found);
    CHECK(w.component == idx::H3);
    CHECK(w.i == 3);
    CHECK(w.j == 2);

    CHECK_THROWS_AS(extend(half), std::invalid_argument);
    CHECK_THROWS_AS(restrict(f), std::invalid_argument);
}

TEST_CASE("interior values round trip")
{
    const Grid g = Grid::periodic({1.0, 1.0, 1.0}, {3, 4, 5});
    const Field f = sample_field(g);
    Field h(g);
    h.set_interior_values(f.interior_values());
    CHECK(bitwise_equal_interior(f, h));
    CHECK(f.interior_values().size() == 3u * 4u * 5u * 8u);
}

TEST_CASE("deterministic reductions")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(100003);
    for (auto& x : v) x = d(rng) * std::pow(10.0, 8 * d(rng));
    const double t1 = tree_sum(v, 1);
    CHECK(tree_sum(v, 4) == t1);
    CHECK(tree_sum(v, 7) == t1);
    const double exact = std::accumulate(v.begin(), v.end(), 0.0L);
    double mag = 0.0;
    for (double x : v) mag += std::abs(x);
    CHECK(std::abs(t1 - exact) <= 1e-12 * mag);
    CHECK(std::abs(serial_sum(v) - exact) <= 1e-12 * mag);

    std::vector<int> hits(1000, 0);
    parallel_for(0, 1000, 4, [&](int k) { ++hits[std::size_t(k)]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(0, 10, 3, [](int k) { if (k == 7) throw std::runtime_error("boom"); }),
                    std::runtime_error);
}
