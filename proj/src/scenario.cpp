#include "mhdq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mhdq/reflection.hpp"

namespace mhdq {

Grid datum_grid(const ScenarioConfig& cfg)
{
    if (cfg.domain == DomainKind::periodic) return Grid::periodic(cfg.L, cfg.n);
    return Grid::quarter(cfg.L, cfg.n);
}

DatumRecipe datum_recipe(const ScenarioConfig& cfg)
{
    DatumRecipe r;
    r.preset = cfg.datum;
    r.amplitude = cfg.amplitude;
    r.width = cfg.width;
    r.center = cfg.center;
    r.c = cfg.c;
    r.p0 = cfg.background_p;
    return r;
}

InitialDatum scenario_datum(const ScenarioConfig& cfg)
{
    return make_admissible_datum(cfg.eos, datum_grid(cfg), datum_recipe(cfg));
}

SolverOptions solver_options(const ScenarioConfig& cfg, int workers)
{
    SolverOptions o;
    o.cfl = cfg.cfl;
    o.epsilon = cfg.epsilon;
    o.workers = workers;
    o.serial_reductions = cfg.serial_reductions;
    return o;
}

CompatTolerances compat_tolerances(const ScenarioConfig& cfg)
{
    CompatTolerances t;
    t.factor = cfg.compat_tol_factor;
    t.h1_threshold = cfg.h1_threshold;
    return t;
}

RunControl run_control(const ScenarioConfig& cfg)
{
    RunControl c;
    c.t_end = cfg.t_end;
    c.max_steps = cfg.max_steps;
    c.output_every = cfg.output_every;
    return c;
}

std::string format_checks(const std::vector<Check>& checks)
{
    std::ostringstream s;
    s << std::scientific << std::setprecision(6);
    for (const auto& c : checks) {
        s << std::left << std::setw(24) << c.name << ' ' << std::right << std::setw(14) << c.value << ' '
          << std::setw(14) << c.threshold << ' ' << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    return s.str();
}

bool all_pass(const std::vector<Check>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Check> persistence_checks(const ScenarioConfig& cfg, const Grid& grid,
                                      const std::vector<DiagnosticRecord>& history)
{
    if (history.empty()) return {};
    const double h = std::max({grid.spacing(0), grid.spacing(1), grid.spacing(2)});
    const double h3_0 = history.front().sobolev[3];
    double ratio = 1.0;
    double div_growth = 0.0;
    for (const auto& d : history) {
        if (h3_0 > 0.0) ratio = std::max(ratio, std::max(d.sobolev[3] / h3_0, h3_0 / d.sobolev[3]));
        else if (d.sobolev[3] > 0.0) ratio = std::numeric_limits<double>::infinity();
        div_growth = std::max(div_growth, d.divH_max - history.front().divH_max);
    }
    const double div_limit = cfg.divh_growth_coeff * h * h;
    return {{"h3_norm_ratio", ratio, cfg.h3_growth_factor, ratio <= cfg.h3_growth_factor},
            {"divH_growth", div_growth, div_limit, div_growth <= div_limit}};
}

ScenarioRun run_scenario(const ScenarioConfig& cfg, int workers, const std::function<void(const RunState&)>& on_output)
{
    ScenarioRun run{scenario_datum(cfg), {}, std::nullopt};
    run.compat = check_all(cfg.eos, run.datum, compat_tolerances(cfg));
    if (cfg.require_compat && !run.compat.passed()) return run;

    RunControl control = run_control(cfg);
    control.on_output = on_output;
    const Field initial = cfg.domain == DomainKind::half ? extend(run.datum.field) : run.datum.field;
    run.result = integrate(cfg.eos, initial, run.datum.background, solver_options(cfg, workers), control);
    return run;
}

ReflectionComparison compare_reflection(const ScenarioConfig& cfg, int workers)
{
    if (cfg.domain == DomainKind::periodic) throw std::invalid_argument("compare-reflection needs a quarter-box scenario");
    ScenarioConfig qcfg = cfg;
    qcfg.domain = DomainKind::quarter;
    const InitialDatum datum = scenario_datum(qcfg);
    const SolverOptions opts = solver_options(qcfg, workers);

    std::vector<Field> quarter_out, half_out;
    RunControl control = run_control(qcfg);
    control.on_output = [&](const RunState& rs) { quarter_out.push_back(rs.field); };
    const RunResult quarter = integrate(qcfg.eos, datum.field, datum.background, opts, control);

    RunControl replay = run_control(qcfg);
    replay.dt_sequence = &quarter.dts;
    replay.max_steps = 0;
    replay.on_output = [&](const RunState& rs) { half_out.push_back(rs.field); };
    const RunResult half = integrate(qcfg.eos, extend(datum.field), datum.background, opts, replay);

    if (quarter_out.size() != half_out.size())
        throw std::logic_error("quarter and half runs recorded different numbers of outputs");

    ReflectionComparison cmp;
    cmp.steps = quarter.state.steps;
    cmp.outputs = int(quarter_out.size());
    cmp.amplitude = qcfg.amplitude;
    double scale = 0.0;
    for (std::size_t n = 0; n < quarter_out.size(); ++n) {
        const Field restricted = restrict(half_out[n]);
        cmp.max_abs = std::max(cmp.max_abs, max_abs_difference(restricted, quarter_out[n]).maxCoeff());
        cmp.bitwise_equal = cmp.bitwise_equal && bitwise_equal_interior(restricted, quarter_out[n]);
        quarter_out[n].for_each_cell([&](int i, int j, int k) {
            scale = std::max(scale, (quarter_out[n].at(i, j, k) - datum.background).cwiseAbs().maxCoeff());
        });
    }
    cmp.max_rel = cmp.max_abs == 0.0 ? 0.0 : (scale > 0.0 ? cmp.max_abs / scale : std::numeric_limits<double>::infinity());
    // The quarter trace reads mirrored ghosts; the half trace reads real
    // cells on both sides of the plane.
    for (const auto* history : {&quarter.state.history, &half.state.history}) {
        for (const auto& d : *history) {
            cmp.trace_u3 = std::max(cmp.trace_u3, d.trace_u3);
            cmp.trace_H3 = std::max(cmp.trace_H3, d.trace_H3);
        }
    }
    for (const auto& d : half.state.history) cmp.parity_defect = std::max(cmp.parity_defect, d.parity_defect);

    if (qcfg.serial_reductions) cmp.checks.push_back({"bitwise_equal", cmp.max_abs, 0.0, cmp.bitwise_equal});
    else cmp.checks.push_back({"max_rel_discrepancy", cmp.max_rel, 1e-13, cmp.max_rel <= 1e-13});
    const double a = std::abs(cmp.amplitude);
    cmp.checks.push_back({"trace_u3", cmp.trace_u3, 1e-12 * a, cmp.trace_u3 <= 1e-12 * a});
    cmp.checks.push_back({"trace_H3", cmp.trace_H3, 1e-12 * a, cmp.trace_H3 <= 1e-12 * a});
    cmp.checks.push_back({"parity_defect", cmp.parity_defect, 1e-13 * a, cmp.parity_defect <= 1e-13 * a});
    return cmp;
}

}  // namespace mhdq
