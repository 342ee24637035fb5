#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mhdq/compat.hpp"
#include "mhdq/config.hpp"
#include "mhdq/datum.hpp"
#include "mhdq/solver.hpp"

namespace mhdq {

/// The box the datum lives on: the quarter box for quarter and half runs
/// (half runs extend it), the periodic box otherwise.
Grid datum_grid(const ScenarioConfig& cfg);
DatumRecipe datum_recipe(const ScenarioConfig& cfg);
InitialDatum scenario_datum(const ScenarioConfig& cfg);
SolverOptions solver_options(const ScenarioConfig& cfg, int workers);
CompatTolerances compat_tolerances(const ScenarioConfig& cfg);
RunControl run_control(const ScenarioConfig& cfg);

/// One named pass/fail check with its measured value and threshold.
struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = true;
};
std::string format_checks(const std::vector<Check>& checks);
bool all_pass(const std::vector<Check>& checks);

/// H^3 norm of U - background stays within h3_growth_factor of its initial
/// value, and max div H grows by at most divh_growth_coeff * h^2.
std::vector<Check> persistence_checks(const ScenarioConfig& cfg, const Grid& grid,
                                      const std::vector<DiagnosticRecord>& history);

struct ScenarioRun {
    InitialDatum datum;
    CompatReport compat;
    /// Empty when the run was refused for failing compatibility.
    std::optional<RunResult> result;
};

/// Builds the datum, checks compatibility and, unless refused, integrates
/// on the configured domain. on_output sees every recorded state.
ScenarioRun run_scenario(const ScenarioConfig& cfg, int workers,
                         const std::function<void(const RunState&)>& on_output = {});

struct ReflectionComparison {
    long steps = 0;
    int outputs = 0;
    /// Max |restrict(half) - quarter| over outputs, cells and components.
    double max_abs = 0.0;
    /// max_abs relative to the largest |quarter - background| seen.
    double max_rel = 0.0;
    bool bitwise_equal = true;
    /// Max over outputs (both runs) of the x3 = 0 traces of u3, H3, and of
    /// the half run's parity defect.
    double trace_u3 = 0.0;
    double trace_H3 = 0.0;
    double parity_defect = 0.0;
    double amplitude = 0.0;
    std::vector<Check> checks;
};

/// Runs the quarter box, then the extended datum on the reflected half box
/// with the quarter run's dt sequence, and compares after restriction at
/// every output.
ReflectionComparison compare_reflection(const ScenarioConfig& cfg, int workers);

}  // namespace mhdq
