#include "mhdq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "mhdq/parallel.hpp"
#include "mhdq/reflection.hpp"
#include "mhdq/stencil.hpp"
#include "mhdq/system.hpp"

namespace mhdq {

namespace {

int wrap(int i, int n)
{
    const int r = i % n;
    return r < 0 ? r + n : r;
}

std::ptrdiff_t axis_stride(const Field& f, int axis)
{
    std::array<int, 3> c{0, 0, 0};
    c[axis] = 1;
    return std::ptrdiff_t(f.offset(c[0], c[1], c[2])) - std::ptrdiff_t(f.offset(0, 0, 0));
}

// Copies ghost layers along one axis. `lo`/`hi` are the index ranges of the
// two tangential axes (ghosts included where already valid).
void fill_axis(Field& f, int axis, std::array<int, 2> ta_range, std::array<int, 2> tb_range)
{
    const Grid& g = f.grid();
    const int n = g.cells[axis];
    const AxisBoundary kind = g.boundary(axis);
    const Vector8d sign = kind == AxisBoundary::wall0 ? wall0_parity() : wall1_parity();
    const int ta = (axis + 1) % 3 < (axis + 2) % 3 ? (axis + 1) % 3 : (axis + 2) % 3;
    const int tb = 3 - axis - ta;

    for (int b = tb_range[0]; b < tb_range[1]; ++b) {
        for (int a = ta_range[0]; a < ta_range[1]; ++a) {
            auto cell = [&](int m) -> Eigen::Map<Vector8d> {
                std::array<int, 3> q{};
                q[ta] = a;
                q[tb] = b;
                q[axis] = m;
                return f.at(q[0], q[1], q[2]);
            };
            for (int gi = 0; gi < Grid::ghosts; ++gi) {
                if (kind == AxisBoundary::periodic) {
                    cell(-1 - gi) = cell(wrap(-1 - gi, n));
                    cell(n + gi) = cell(wrap(n + gi, n));
                } else {
                    cell(-1 - gi) = sign.cwiseProduct(Vector8d(cell(gi)));
                    cell(n + gi) = sign.cwiseProduct(Vector8d(cell(n - 1 - gi)));
                }
            }
        }
    }
}

std::string describe_cell(int i, int j, int k, const Vector8d& U)
{
    std::ostringstream msg;
    msg << " at cell (" << i << ", " << j << ", " << k << "), U = (";
    for (int c = 0; c < num_components; ++c) msg << (c ? ", " : "") << U(c);
    msg << ")";
    return msg.str();
}

double reduce_sum(const std::vector<double>& v, const SolverOptions& opts)
{
    return opts.serial_reductions ? serial_sum(v) : tree_sum(v, opts.workers);
}

}  // namespace

void apply_bc(Field& field)
{
    const Grid& g = field.grid();
    const int G = Grid::ghosts;
    // x2 over interior (x1, x3); x1 over all x2 and interior x3; x3 over all.
    fill_axis(field, 1, {0, g.cells[0]}, {0, g.cells[2]});
    fill_axis(field, 0, {-G, g.cells[1] + G}, {0, g.cells[2]});
    fill_axis(field, 2, {-G, g.cells[0] + G}, {-G, g.cells[1] + G});
}

Field semi_discrete_rhs(const EquationOfState& eos, const Field& field, const SolverOptions& opts)
{
    const Grid& g = field.grid();
    Field out(g);
    std::array<std::ptrdiff_t, 3> stride{};
    std::array<double, 3> inv12h{};
    std::array<double, 3> inv_h{};
    for (int a = 0; a < 3; ++a) {
        stride[a] = axis_stride(field, a);
        inv12h[a] = 1.0 / (12.0 * g.spacing(a));
        inv_h[a] = 1.0 / g.spacing(a);
    }
    const double* base = field.raw().data();
    double* dst = out.raw().data();

    parallel_for(0, g.cells[2], opts.workers, [&](int k) {
        Gradient<double> grad;
        for (int j = 0; j < g.cells[1]; ++j) {
            for (int i = 0; i < g.cells[0]; ++i) {
                const std::size_t off = field.offset(i, j, k);
                const double* p = base + off;
                const Vector8d U = Eigen::Map<const Vector8d>(p);
                for (int a = 0; a < 3; ++a) {
                    const std::ptrdiff_t s = stride[a];
                    for (int c = 0; c < num_components; ++c) {
                        const double d1 = p[s + c] - p[-s + c];
                        const double d2 = p[2 * s + c] - p[-2 * s + c];
                        grad(c, a) = (8.0 * d1 - d2) * inv12h[a];
                    }
                }
                Vector8d dUdt;
                try {
                    dUdt = rhs(eos, U, grad);
                    if (opts.epsilon > 0.0) {
                        const double lambda = characteristic_speed_bound(eos, U);
                        for (int a = 0; a < 3; ++a) {
                            const std::ptrdiff_t s = stride[a];
                            const double coef = opts.epsilon * lambda * inv_h[a];
                            for (int c = 0; c < num_components; ++c) {
                                const double outer = p[-2 * s + c] + p[2 * s + c];
                                const double inner = p[-s + c] + p[s + c];
                                const double delta4 = (outer - 4.0 * inner) + 6.0 * p[c];
                                dUdt(c) -= coef * delta4;
                            }
                        }
                    }
                } catch (const HyperbolicityError& e) {
                    throw HyperbolicityError(std::string(e.what()) + describe_cell(i, j, k, U));
                }
                Eigen::Map<Vector8d>(dst + off) = dUdt;
            }
        }
    });
    return out;
}

double max_wave_speed(const EquationOfState& eos, const Field& field, int workers)
{
    const Grid& g = field.grid();
    std::vector<double> slab_max(std::size_t(g.cells[2]), 0.0);
    parallel_for(0, g.cells[2], workers, [&](int k) {
        double m = 0.0;
        for (int j = 0; j < g.cells[1]; ++j) {
            for (int i = 0; i < g.cells[0]; ++i) {
                const Vector8d U = field.at(i, j, k);
                try {
                    m = std::max(m, characteristic_speed_bound(eos, U));
                } catch (const HyperbolicityError& e) {
                    throw HyperbolicityError(std::string(e.what()) + describe_cell(i, j, k, U));
                }
            }
        }
        slab_max[std::size_t(k)] = m;
    });
    return *std::max_element(slab_max.begin(), slab_max.end());
}

double stable_dt(const EquationOfState& eos, const Field& field, const SolverOptions& opts)
{
    return opts.cfl * field.grid().min_spacing() / max_wave_speed(eos, field, opts.workers);
}

void step(const EquationOfState& eos, RunState& rs, double dt, const SolverOptions& opts)
{
    const double limit = stable_dt(eos, rs.field, opts);
    if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "time step " << dt << " violates the CFL limit " << limit << " (cfl = " << opts.cfl << ")";
        throw CflError(msg.str());
    }

    const Grid& g = rs.field.grid();
    Field stage = rs.field;
    auto evaluate = [&](Field& f) {
        apply_bc(f);
        return semi_discrete_rhs(eos, f, opts);
    };
    auto combine = [&](const Field& k, double w) {
        Field next = rs.field;
        auto src = k.raw();
        auto dst = next.raw();
        for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = dst[n] + w * src[n];
        return next;
    };

    const Field k1 = evaluate(stage);
    stage = combine(k1, 0.5 * dt);
    const Field k2 = evaluate(stage);
    stage = combine(k2, 0.5 * dt);
    const Field k3 = evaluate(stage);
    stage = combine(k3, dt);
    const Field k4 = evaluate(stage);

    const double w = dt / 6.0;
    auto u = rs.field.raw();
    auto a = k1.raw(), b = k2.raw(), c = k3.raw(), d = k4.raw();
    for (std::size_t n = 0; n < u.size(); ++n) u[n] = u[n] + w * (a[n] + 2.0 * b[n] + 2.0 * c[n] + d[n]);
    (void)g;

    rs.t += dt;
    rs.steps += 1;
    apply_bc(rs.field);
}

double divergence_max(const Field& field)
{
    const Grid& g = field.grid();
    std::array<int, 3> lo{}, hi{};
    for (int a = 0; a < 3; ++a) {
        const bool periodic = g.boundary(a) == AxisBoundary::periodic;
        lo[a] = periodic ? 0 : 2;
        hi[a] = periodic ? g.cells[a] : g.cells[a] - 2;
    }
    double m = 0.0;
    for (int k = lo[2]; k < hi[2]; ++k) {
        for (int j = lo[1]; j < hi[1]; ++j) {
            for (int i = lo[0]; i < hi[0]; ++i) {
                double div = 0.0;
                for (int a = 0; a < 3; ++a) {
                    auto value = [&](int shift) {
                        std::array<int, 3> q{i, j, k};
                        q[a] = g.boundary(a) == AxisBoundary::periodic ? wrap(q[a] + shift, g.cells[a]) : q[a] + shift;
                        return field(q[0], q[1], q[2], idx::H(a));
                    };
                    div += (8.0 * (value(1) - value(-1)) - (value(2) - value(-2))) / (12.0 * g.spacing(a));
                }
                m = std::max(m, std::abs(div));
            }
        }
    }
    return m;
}

std::array<double, 4> sobolev_norms(const Field& diff, const SolverOptions& opts)
{
    const Grid& g = diff.grid();
    const double vol = g.cell_volume();
    std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};

    auto sum_squares = [&](const Field& f) {
        std::vector<double> cell;
        cell.reserve(g.interior_count());
        f.for_each_cell([&](int i, int j, int k) { cell.push_back(f.at(i, j, k).squaredNorm() * vol); });
        return reduce_sum(cell, opts);
    };

    sums[0] = sum_squares(diff);
    std::array<Field, 3> first;
    for (int a = 0; a < 3; ++a) {
        first[a] = axis_derivative(diff, a, 3);
        sums[1] += sum_squares(first[a]);
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
            const Field second = axis_derivative(first[a], b, 3);
            sums[2] += sum_squares(second);
            for (int c = b; c < 3; ++c) sums[3] += sum_squares(axis_derivative(second, c, 3));
        }
    }
    std::array<double, 4> norms{};
    double acc = 0.0;
    for (int m = 0; m < 4; ++m) {
        acc += sums[m];
        norms[m] = std::sqrt(acc);
    }
    return norms;
}

std::vector<Vector8d> x3_plane_trace(const Field& field)
{
    const Grid& g = field.grid();
    if (g.kind == DomainKind::periodic) return {};
    // Cells at -1.5h, -0.5h, 0.5h, 1.5h around the plane.
    const int k0 = g.kind == DomainKind::half ? g.cells[2] / 2 : 0;
    std::vector<Vector8d> out;
    out.reserve(std::size_t(g.cells[0]) * std::size_t(g.cells[1]));
    for (int j = 0; j < g.cells[1]; ++j) {
        for (int i = 0; i < g.cells[0]; ++i) {
            const Vector8d near = field.at(i, j, k0 - 1) + field.at(i, j, k0);
            const Vector8d far = field.at(i, j, k0 - 2) + field.at(i, j, k0 + 1);
            out.push_back((9.0 * near - far) / 16.0);
        }
    }
    return out;
}

DiagnosticRecord diagnostics(const EquationOfState& eos, const Field& field, const Vector8d& background,
                             const SolverOptions& opts)
{
    const Grid& g = field.grid();
    DiagnosticRecord r;
    r.divH_max = divergence_max(field);

    std::vector<double> energy;
    energy.reserve(g.interior_count());
    const double vol = g.cell_volume();
    field.for_each_cell([&](int i, int j, int k) {
        const Vector8d U = field.at(i, j, k);
        const double rho = density(eos, U(idx::p), U(idx::S)).rho;
        const double kinetic = 0.5 * rho * U.segment<3>(idx::u1).squaredNorm();
        const double magnetic = 0.5 * U.segment<3>(idx::H1).squaredNorm();
        energy.push_back((kinetic + magnetic) * vol);
    });
    r.energy = reduce_sum(energy, opts);

    Field diff(g);
    field.for_each_cell([&](int i, int j, int k) { diff.at(i, j, k) = field.at(i, j, k) - background; });
    r.sobolev = sobolev_norms(diff, opts);

    if (g.kind != DomainKind::periodic) {
        Field filled = field;
        apply_bc(filled);
        for (const Vector8d& v : x3_plane_trace(filled)) {
            r.trace_u3 = std::max(r.trace_u3, std::abs(v(idx::u3)));
            r.trace_H3 = std::max(r.trace_H3, std::abs(v(idx::H3)));
        }
    }
    if (g.kind == DomainKind::half) r.parity_defect = parity_defect(field).maxCoeff();
    return r;
}

RunResult integrate(const EquationOfState& eos, const Field& initial, const Vector8d& background,
                    const SolverOptions& opts, const RunControl& control)
{
    RunResult result;
    RunState& rs = result.state;
    rs.field = initial;
    apply_bc(rs.field);

    auto record = [&] {
        DiagnosticRecord d = diagnostics(eos, rs.field, background, opts);
        d.t = rs.t;
        rs.history.push_back(d);
        if (control.on_output) control.on_output(rs);
    };
    record();

    const double t_tol = 1e-13 * std::max(1.0, std::abs(control.t_end));
    auto finished = [&] {
        if (control.max_steps > 0 && rs.steps >= control.max_steps) return true;
        if (control.dt_sequence) return rs.steps >= long(control.dt_sequence->size());
        return control.t_end - rs.t <= t_tol;
    };

    while (!finished()) {
        double dt;
        if (control.dt_sequence) {
            dt = (*control.dt_sequence)[std::size_t(rs.steps)];
        } else {
            dt = stable_dt(eos, rs.field, opts);
            if (rs.t + dt > control.t_end) dt = control.t_end - rs.t;
        }
        step(eos, rs, dt, opts);
        result.dts.push_back(dt);
        const bool done = finished();
        if (done || (control.output_every > 0 && rs.steps % control.output_every == 0)) record();
    }
    return result;
}

}  // namespace mhdq
