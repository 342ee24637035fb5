#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mhdq/state.hpp"

namespace mhdq {

/// quarter: x1 in [0,L1], x3 in [0,L3] with walls on x1 and x3, x2 periodic.
/// half:    the x3-reflected box x3 in [-L3,L3], same wall types.
/// periodic: every axis periodic (no walls).
enum class DomainKind { quarter, half, periodic };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

/// Face treatment along an axis.
///   wall0: u3, H3 odd, the rest even (the x3 walls)
///   wall1: u odd, p, H, S even (the x1 walls)
enum class AxisBoundary { periodic, wall0, wall1 };

/// Cell-centered box with two ghost layers on every side.
struct Grid {
    static constexpr int ghosts = 2;

    DomainKind kind = DomainKind::quarter;
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    std::array<double, 3> extent{1.0, 1.0, 1.0};
    std::array<int, 3> cells{16, 16, 16};

    /// Quarter box [0,L1]x[0,L2]x[0,L3].
    static Grid quarter(std::array<double, 3> L, std::array<int, 3> n);
    /// Periodic box [0,L1]x[0,L2]x[0,L3].
    static Grid periodic(std::array<double, 3> L, std::array<int, 3> n);
    /// The half box obtained by reflecting a quarter box across x3 = 0.
    Grid reflected() const;
    /// The quarter box a half box was reflected from.
    Grid unreflected() const;

    double spacing(int axis) const { return extent[axis] / cells[axis]; }
    double min_spacing() const;
    double center(int axis, int i) const { return origin[axis] + (i + 0.5) * spacing(axis); }
    Vector3d center(int i, int j, int k) const { return {center(0, i), center(1, j), center(2, k)}; }
    double cell_volume() const { return spacing(0) * spacing(1) * spacing(2); }
    std::size_t interior_count() const
    {
        return std::size_t(cells[0]) * std::size_t(cells[1]) * std::size_t(cells[2]);
    }
    AxisBoundary boundary(int axis) const;

    bool operator==(const Grid&) const = default;
};

/// States on a Grid, ghosts included. Storage is x1-fastest with the 8
/// components of a cell contiguous.
class Field {
public:
    Field() = default;
    explicit Field(const Grid& grid, const Vector8d& fill = Vector8d::Zero());

    const Grid& grid() const { return grid_; }

    Eigen::Map<Vector8d> at(int i, int j, int k) { return Eigen::Map<Vector8d>(data_.data() + offset(i, j, k)); }
    Eigen::Map<const Vector8d> at(int i, int j, int k) const
    {
        return Eigen::Map<const Vector8d>(data_.data() + offset(i, j, k));
    }
    double& operator()(int i, int j, int k, int comp) { return data_[offset(i, j, k) + comp]; }
    double operator()(int i, int j, int k, int comp) const { return data_[offset(i, j, k) + comp]; }

    std::span<double> raw() { return data_; }
    std::span<const double> raw() const { return data_; }

    /// Interior cells only, x1-fastest, components interleaved.
    std::vector<double> interior_values() const;
    void set_interior_values(std::span<const double> values);

    /// Apply f(i, j, k) over every interior cell.
    template <typename F>
    void for_each_cell(F&& f) const
    {
        for (int k = 0; k < grid_.cells[2]; ++k)
            for (int j = 0; j < grid_.cells[1]; ++j)
                for (int i = 0; i < grid_.cells[0]; ++i) f(i, j, k);
    }

    std::size_t offset(int i, int j, int k) const
    {
        const int g = Grid::ghosts;
        return num_components * ((std::size_t(k + g) * stride_[1] + std::size_t(j + g)) * stride_[0] +
                                 std::size_t(i + g));
    }

private:
    Grid grid_;
    std::array<std::size_t, 3> stride_{0, 0, 0};
    std::vector<double> data_;
};

/// Max |a - b| over interior cells, per component.
Vector8d max_abs_difference(const Field& a, const Field& b);

/// True when the interior cells of a and b hold identical bit patterns.
bool bitwise_equal_interior(const Field& a, const Field& b);

}  // namespace mhdq
