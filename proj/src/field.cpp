#include "mhdq/field.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace mhdq {

std::string to_string(DomainKind kind)
{
    switch (kind) {
    case DomainKind::quarter: return "quarter";
    case DomainKind::half: return "half";
    case DomainKind::periodic: return "periodic";
    }
    return "unknown";
}

DomainKind domain_kind_from_string(const std::string& name)
{
    if (name == "quarter") return DomainKind::quarter;
    if (name == "half") return DomainKind::half;
    if (name == "periodic") return DomainKind::periodic;
    throw std::invalid_argument("unknown domain kind '" + name + "' (expected quarter, half or periodic)");
}

Grid Grid::quarter(std::array<double, 3> L, std::array<int, 3> n)
{
    return Grid{DomainKind::quarter, {0.0, 0.0, 0.0}, L, n};
}

Grid Grid::periodic(std::array<double, 3> L, std::array<int, 3> n)
{
    return Grid{DomainKind::periodic, {0.0, 0.0, 0.0}, L, n};
}

Grid Grid::reflected() const
{
    if (kind != DomainKind::quarter || origin[2] != 0.0) {
        throw std::invalid_argument("only a quarter box with its x3 wall at 0 can be reflected");
    }
    Grid g = *this;
    g.kind = DomainKind::half;
    g.origin[2] = -extent[2];
    g.extent[2] = 2.0 * extent[2];
    g.cells[2] = 2 * cells[2];
    return g;
}

Grid Grid::unreflected() const
{
    if (kind != DomainKind::half || cells[2] % 2 != 0) {
        throw std::invalid_argument("expected a half box with an even number of x3 cells");
    }
    Grid g = *this;
    g.kind = DomainKind::quarter;
    g.origin[2] = 0.0;
    g.extent[2] = 0.5 * extent[2];
    g.cells[2] = cells[2] / 2;
    return g;
}

double Grid::min_spacing() const
{
    return std::min({spacing(0), spacing(1), spacing(2)});
}

AxisBoundary Grid::boundary(int axis) const
{
    if (kind == DomainKind::periodic || axis == 1) return AxisBoundary::periodic;
    return axis == 0 ? AxisBoundary::wall1 : AxisBoundary::wall0;
}

Field::Field(const Grid& grid, const Vector8d& fill) : grid_(grid)
{
    for (int a = 0; a < 3; ++a) {
        if (grid.cells[a] <= 0) throw std::invalid_argument("grid cell counts must be positive");
        if (!(grid.extent[a] > 0.0)) throw std::invalid_argument("grid extents must be positive");
    }
    const int g = 2 * Grid::ghosts;
    stride_ = {std::size_t(grid.cells[0] + g), std::size_t(grid.cells[1] + g), std::size_t(grid.cells[2] + g)};
    data_.resize(num_components * stride_[0] * stride_[1] * stride_[2]);
    for (std::size_t c = 0; c < data_.size(); c += num_components) {
        std::copy(fill.data(), fill.data() + num_components, data_.begin() + std::ptrdiff_t(c));
    }
}

std::vector<double> Field::interior_values() const
{
    std::vector<double> out;
    out.reserve(num_components * grid_.interior_count());
    for_each_cell([&](int i, int j, int k) {
        const double* p = data_.data() + offset(i, j, k);
        out.insert(out.end(), p, p + num_components);
    });
    return out;
}

void Field::set_interior_values(std::span<const double> values)
{
    if (values.size() != num_components * grid_.interior_count()) {
        throw std::invalid_argument("value count does not match the grid");
    }
    std::size_t n = 0;
    for_each_cell([&](int i, int j, int k) {
        std::copy_n(values.data() + n, num_components, data_.data() + offset(i, j, k));
        n += num_components;
    });
}

Vector8d max_abs_difference(const Field& a, const Field& b)
{
    if (a.grid().cells != b.grid().cells) throw std::invalid_argument("grids differ in cell counts");
    Vector8d m = Vector8d::Zero();
    a.for_each_cell([&](int i, int j, int k) { m = m.cwiseMax((a.at(i, j, k) - b.at(i, j, k)).cwiseAbs()); });
    return m;
}

bool bitwise_equal_interior(const Field& a, const Field& b)
{
    if (a.grid().cells != b.grid().cells) return false;
    bool equal = true;
    a.for_each_cell([&](int i, int j, int k) {
        if (std::memcmp(a.at(i, j, k).data(), b.at(i, j, k).data(), sizeof(double) * num_components) != 0) {
            equal = false;
        }
    });
    return equal;
}

}  // namespace mhdq
