#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "mhdq/eos.hpp"
#include "mhdq/field.hpp"

namespace mhdq {

/// Initial data on a quarter (or periodic) box, with the constant state it
/// relaxes to away from the perturbation.
struct InitialDatum {
    Field field;
    Vector8d background;
};

struct DatumRecipe {
    /// constant | interior-bump | symmetric-perturbation | alfven-periodic
    std::string preset = "interior-bump";
    double amplitude = 0.01;
    double width = 0.24;
    /// NaN entries are replaced by the preset's default center.
    std::array<double, 3> center{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()};
    /// Background normal field c (nonzero) and background pressure.
    double c = 1.0;
    double p0 = 0.0;
};

const std::vector<std::string>& datum_presets();

/// Builds data that meet every well-posedness hypothesis by construction.
///
///  - constant: the background everywhere.
///  - interior-bump: compactly supported bumps in p, u, S and a magnetic
///    perturbation H = curl A (A compactly supported), kept clear of every
///    wall. Throws if the support would touch a wall.
///  - symmetric-perturbation: a bump centered on the x3 = 0 wall with
///    u3, H3 odd and the other components even in x3; H is again a curl.
///  - alfven-periodic: circularly polarized Alfven wave along x1 on a
///    periodic box (an exact nonlinear solution).
///
/// Throws std::invalid_argument on an unknown preset, a grid of the wrong
/// kind, or a support that reaches a wall.
InitialDatum make_admissible_datum(const EquationOfState& eos, const Grid& grid, const DatumRecipe& recipe);

/// Compact bump (1 - r^2/w^2)^6 and its gradient.
struct Bump {
    Vector3d center;
    double width;

    double value(const Vector3d& x) const;
    Vector3d gradient(const Vector3d& x) const;
};

}  // namespace mhdq
