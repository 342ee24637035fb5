#pragma once

#include <span>
#include <vector>

#include "mhdq/field.hpp"

namespace mhdq {

/// Finite-difference weights for the `deriv`-th derivative at x0 from
/// values at `nodes` (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int deriv);

/// Weights for the `deriv`-th derivative at the lower face of a cell-centered
/// axis, using the first `points` cell centers (at 0.5, 1.5, ... in units of
/// h). Divide the weighted sum by h^deriv.
std::vector<double> face_weights(int points, int deriv);

/// Derivative along `axis` of the interior cells, without ghost data:
/// centered `points`-wide stencils in the bulk, one-sided stencils of the
/// same width next to walls, wrap-around on periodic axes. points = 5 is
/// fourth order, points = 3 second order. Ghost cells of the result are 0.
Field axis_derivative(const Field& f, int axis, int points);

/// Evaluates the `deriv`-th normal derivative on a boundary face of the
/// interior cells: lower (x = origin) or upper face along `axis`. Returns
/// one 8-vector per face cell, in (tangent-a fastest, tangent-b) order.
std::vector<Vector8d> face_values(const Field& f, int axis, bool upper, int points, int deriv);

}  // namespace mhdq
