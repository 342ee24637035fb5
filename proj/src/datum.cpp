#include "mhdq/datum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mhdq {

const std::vector<std::string>& datum_presets()
{
    static const std::vector<std::string> names = {"constant", "interior-bump", "symmetric-perturbation",
                                                   "alfven-periodic"};
    return names;
}

double Bump::value(const Vector3d& x) const
{
    const double s = (x - center).squaredNorm() / (width * width);
    return s < 1.0 ? std::pow(1.0 - s, 6) : 0.0;
}

Vector3d Bump::gradient(const Vector3d& x) const
{
    const Vector3d d = x - center;
    const double s = d.squaredNorm() / (width * width);
    if (s >= 1.0) return Vector3d::Zero();
    return (-12.0 * std::pow(1.0 - s, 5) / (width * width)) * d;
}

namespace {

void require_inside(const Grid& grid, const Vector3d& center, double width, std::array<bool, 3> axes)
{
    for (int a = 0; a < 3; ++a) {
        if (!axes[a]) continue;
        const double lo = grid.origin[a];
        const double hi = grid.origin[a] + grid.extent[a];
        if (!(center(a) - width > lo && center(a) + width < hi)) {
            std::ostringstream msg;
            msg << "perturbation support [" << center(a) - width << ", " << center(a) + width << "] along x"
                << a + 1 << " touches a boundary of [" << lo << ", " << hi << "]";
            throw std::invalid_argument(msg.str());
        }
    }
}

Vector3d resolve_center(const DatumRecipe& r, const Vector3d& fallback)
{
    Vector3d c;
    for (int a = 0; a < 3; ++a) c(a) = std::isnan(r.center[std::size_t(a)]) ? fallback(a) : r.center[std::size_t(a)];
    return c;
}

}  // namespace

InitialDatum make_admissible_datum(const EquationOfState& eos, const Grid& grid, const DatumRecipe& recipe)
{
    if (recipe.c == 0.0) throw std::invalid_argument("background field c must be nonzero");
    const Vector8d bg = background_state(recipe.c, recipe.p0);
    InitialDatum d{Field(grid, bg), bg};
    const double a = recipe.amplitude;
    const double w = recipe.width;

    auto fill = [&](auto&& perturbation) {
        d.field.for_each_cell([&](int i, int j, int k) { d.field.at(i, j, k) = bg + perturbation(grid.center(i, j, k)); });
    };

    if (recipe.preset == "constant") return d;

    if (recipe.preset == "interior-bump") {
        if (grid.kind != DomainKind::quarter) throw std::invalid_argument("interior-bump needs a quarter box");
        if (!(w > 0.0)) throw std::invalid_argument("bump width must be positive");
        const Vector3d mid(grid.origin[0] + 0.5 * grid.extent[0], grid.origin[1] + 0.5 * grid.extent[1],
                           grid.origin[2] + 0.5 * grid.extent[2]);
        const Bump bump{resolve_center(recipe, mid), w};
        require_inside(grid, bump.center, w, {true, true, true});
        const Vector3d u_dir(1.0, -0.5, 0.5);
        const Vector3d potential_dir(0.3, 0.5, 1.0);
        fill([&](const Vector3d& x) {
            const double psi = bump.value(x);
            // H = curl(a w psi v) = a w grad(psi) x v
            const Vector3d H = a * w * bump.gradient(x).cross(potential_dir);
            const Vector3d u = a * psi * u_dir;
            return make_state(a * psi, u, H, 0.5 * a * psi);
        });
        return d;
    }

    if (recipe.preset == "symmetric-perturbation") {
        if (grid.kind != DomainKind::quarter) throw std::invalid_argument("symmetric-perturbation needs a quarter box");
        if (!(w > 0.0)) throw std::invalid_argument("bump width must be positive");
        const Vector3d mid(grid.origin[0] + 0.5 * grid.extent[0], grid.origin[1] + 0.5 * grid.extent[1], 0.0);
        Vector3d center = resolve_center(recipe, mid);
        center(2) = 0.0;
        const Bump bump{center, w};
        require_inside(grid, center, w, {true, true, false});
        if (!(w < grid.extent[2])) throw std::invalid_argument("perturbation support reaches the far x3 wall");
        fill([&](const Vector3d& x) {
            const double psi = bump.value(x);
            const Vector3d g = bump.gradient(x);
            const double z = x(2);
            // A = a (z psi, 0, w psi); H = curl A.
            const Vector3d H(a * w * g(1), a * (psi + z * g(2)) - a * w * g(0), -a * z * g(1));
            const Vector3d u(0.5 * a * psi, -0.3 * a * psi, a * (z / w) * psi);
            return make_state(a * psi, u, H, 0.5 * a * psi);
        });
        return d;
    }

    if (recipe.preset == "alfven-periodic") {
        if (grid.kind != DomainKind::periodic) throw std::invalid_argument("alfven-periodic needs a periodic box");
        const double rho = density(eos, recipe.p0, 0.0).rho;
        const double k = 2.0 * std::numbers::pi / grid.extent[0];
        const double sign = recipe.c > 0.0 ? 1.0 : -1.0;
        fill([&](const Vector3d& x) {
            const Vector3d dH(0.0, a * std::cos(k * x(0)), a * std::sin(k * x(0)));
            const Vector3d du = (-sign / std::sqrt(rho)) * dH;
            return make_state(0.0, du, dH, 0.0);
        });
        return d;
    }

    throw std::invalid_argument("unknown datum preset '" + recipe.preset + "'");
}

}  // namespace mhdq
