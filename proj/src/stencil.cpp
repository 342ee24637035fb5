#include "mhdq/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhdq {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int deriv)
{
    const int n = int(nodes.size());
    if (n <= deriv) throw std::invalid_argument("fd_weights: not enough nodes for the derivative order");
    std::vector<std::vector<double>> c(std::size_t(n), std::vector<double>(std::size_t(deriv + 1), 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, deriv);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[std::size_t(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[std::size_t(i)] - nodes[std::size_t(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[std::size_t(i)] = c[std::size_t(i)][std::size_t(deriv)];
    return w;
}

std::vector<double> face_weights(int points, int deriv)
{
    std::vector<double> nodes(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) nodes[std::size_t(i)] = i + 0.5;
    return fd_weights(0.0, nodes, deriv);
}

namespace {

// Per-axis line operator: weights[i] and start[i] for each cell i of the line.
struct LineStencil {
    std::vector<std::vector<double>> weights;
    std::vector<int> start;
    bool periodic = false;
};

LineStencil make_line_stencil(int n, int points, bool periodic, double h)
{
    const int half = points / 2;
    LineStencil s;
    s.periodic = periodic;
    s.weights.resize(std::size_t(n));
    s.start.resize(std::size_t(n));
    std::vector<double> nodes(static_cast<std::size_t>(points));
    for (int m = 0; m < points; ++m) nodes[std::size_t(m)] = m;
    if (!periodic && n < points) {
        throw std::invalid_argument("axis has fewer cells than the derivative stencil");
    }
    for (int i = 0; i < n; ++i) {
        const int st = periodic ? i - half : std::clamp(i - half, 0, n - points);
        auto w = fd_weights(double(i - st), nodes, 1);
        for (double& x : w) x /= h;
        s.weights[std::size_t(i)] = std::move(w);
        s.start[std::size_t(i)] = st;
    }
    return s;
}

int wrap(int i, int n)
{
    const int r = i % n;
    return r < 0 ? r + n : r;
}

}  // namespace

Field axis_derivative(const Field& f, int axis, int points)
{
    const Grid& g = f.grid();
    const int n = g.cells[axis];
    const bool periodic = g.boundary(axis) == AxisBoundary::periodic;
    const LineStencil line = make_line_stencil(n, points, periodic, g.spacing(axis));

    Field out(g);
    f.for_each_cell([&](int i, int j, int k) {
        std::array<int, 3> c{i, j, k};
        const int pos = c[axis];
        const auto& w = line.weights[std::size_t(pos)];
        // Weights sum to zero; differencing against the cell itself makes
        // constant fields differentiate to exactly zero.
        const Vector8d self = f.at(i, j, k);
        Vector8d acc = Vector8d::Zero();
        for (int m = 0; m < points; ++m) {
            std::array<int, 3> q = c;
            q[axis] = periodic ? wrap(line.start[std::size_t(pos)] + m, n) : line.start[std::size_t(pos)] + m;
            acc += w[std::size_t(m)] * (f.at(q[0], q[1], q[2]) - self);
        }
        out.at(i, j, k) = acc;
    });
    return out;
}

std::vector<Vector8d> face_values(const Field& f, int axis, bool upper, int points, int deriv)
{
    const Grid& g = f.grid();
    const int n = g.cells[axis];
    if (n < points) throw std::invalid_argument("axis has fewer cells than the face stencil");
    auto w = face_weights(points, deriv);
    const double scale = std::pow(upper ? -1.0 : 1.0, deriv) / std::pow(g.spacing(axis), deriv);

    const int a = (axis + 1) % 3;
    const int b = (axis + 2) % 3;
    const int ta = std::min(a, b);
    const int tb = std::max(a, b);
    std::vector<Vector8d> out;
    out.reserve(std::size_t(g.cells[ta]) * std::size_t(g.cells[tb]));
    for (int jb = 0; jb < g.cells[tb]; ++jb) {
        for (int ja = 0; ja < g.cells[ta]; ++ja) {
            auto node = [&](int m) {
                std::array<int, 3> q{};
                q[ta] = ja;
                q[tb] = jb;
                q[axis] = upper ? n - 1 - m : m;
                return Vector8d(f.at(q[0], q[1], q[2]));
            };
            // Derivative weights sum to zero; difference against the first
            // node so constants give exactly zero.
            const Vector8d ref = deriv > 0 ? node(0) : Vector8d::Zero();
            Vector8d acc = Vector8d::Zero();
            for (int m = 0; m < points; ++m) acc += w[std::size_t(m)] * (node(m) - ref);
            out.push_back(scale * acc);
        }
    }
    return out;
}

}  // namespace mhdq
