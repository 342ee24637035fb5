#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mhdq/eos.hpp"
#include "mhdq/field.hpp"

namespace mhdq {

struct SolverOptions {
    double cfl = 0.5;
    /// Fourth-difference dissipation coefficient, scaled by the local
    /// characteristic speed.
    double epsilon = 0.02;
    /// Slab-parallel worker count (0 or 1 = inline).
    int workers = 0;
    /// Left-to-right reductions instead of the pairwise tree.
    bool serial_reductions = false;
};

/// dt above the CFL limit.
class CflError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DiagnosticRecord {
    double t = 0.0;
    double divH_max = 0.0;
    double energy = 0.0;
    /// Discrete H^0..H^3 norms of field - background.
    std::array<double, 4> sobolev{0.0, 0.0, 0.0, 0.0};
    /// max |u3|, |H3| interpolated to the x3 = 0 plane (zero when the
    /// domain has no such plane).
    double trace_u3 = 0.0;
    double trace_H3 = 0.0;
    /// max parity defect over components; only meaningful on half boxes.
    double parity_defect = 0.0;
};

struct RunState {
    double t = 0.0;
    Field field;
    long steps = 0;
    std::vector<DiagnosticRecord> history;
};

/// Fills every ghost layer: x2 (and every axis of a periodic box) wraps,
/// x3 walls mirror with u3, H3 odd, x1 walls mirror with u odd.
void apply_bc(Field& field);

/// Semi-discrete right-hand side at every interior cell: fourth-order
/// central differences of the quasilinear form plus fourth-difference
/// dissipation. `field` must have its ghosts filled. Throws
/// HyperbolicityError naming the cell when A0 degenerates.
Field semi_discrete_rhs(const EquationOfState& eos, const Field& field, const SolverOptions& opts);

/// max over interior cells of the characteristic speed bound.
double max_wave_speed(const EquationOfState& eos, const Field& field, int workers = 0);

/// cfl * min h / max wave speed.
double stable_dt(const EquationOfState& eos, const Field& field, const SolverOptions& opts);

/// One classical RK4 step, ghosts refilled before each stage. Throws
/// CflError if dt exceeds the CFL limit.
void step(const EquationOfState& eos, RunState& rs, double dt, const SolverOptions& opts);

DiagnosticRecord diagnostics(const EquationOfState& eos, const Field& field, const Vector8d& background,
                             const SolverOptions& opts = {});

/// max |discrete div H| over cells whose fourth-order stencil needs no
/// ghost data.
double divergence_max(const Field& field);

/// Discrete H^0..H^3 norms (cumulative) of `diff`, using second-order
/// differences with one-sided stencils at walls.
std::array<double, 4> sobolev_norms(const Field& diff, const SolverOptions& opts = {});

/// Fourth-order interpolation of every component to the x3 = 0 plane,
/// one entry per (i, j) column. Quarter boxes read the ghost layer, so
/// ghosts must be filled; half boxes straddle the plane with real cells.
std::vector<Vector8d> x3_plane_trace(const Field& field);

struct RunControl {
    double t_end = 1.0;
    /// Stop after this many steps (0 = no limit).
    long max_steps = 0;
    /// Diagnostics (and on_output) every this many steps, plus the last.
    int output_every = 10;
    /// Replay this dt sequence instead of the CFL rule.
    const std::vector<double>* dt_sequence = nullptr;
    std::function<void(const RunState&)> on_output;
};

struct RunResult {
    RunState state;
    std::vector<double> dts;
};

RunResult integrate(const EquationOfState& eos, const Field& initial, const Vector8d& background,
                    const SolverOptions& opts, const RunControl& control);

}  // namespace mhdq
