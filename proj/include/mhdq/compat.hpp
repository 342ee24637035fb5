#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mhdq/datum.hpp"
#include "mhdq/eos.hpp"
#include "mhdq/field.hpp"

namespace mhdq {

/// Formal time derivatives d^k U / dt^k at t = 0 for k = 0..k_max (k_max
/// <= 2), obtained by solving the quasilinear system for dU/dt and
/// differentiating once more in time:
///
///   dU/dt     = -sum_j Ahat_j(U) D_j U
///   d2U/dt2   = -sum_j [ (D_U Ahat_j(U)[dU/dt]) D_j U + Ahat_j(U) D_j(dU/dt) ]
///
/// D_j is fourth-order (centered in the bulk, one-sided at walls, no ghost
/// data). Throws HyperbolicityError naming the cell.
std::vector<Field> time_derivatives(const EquationOfState& eos, const InitialDatum& datum, int k_max = 2);

struct CompatTolerances {
    /// Tolerance = factor * h^2 * (magnitude of the checked quantity).
    double factor = 10.0;
    /// Lower bound for |H1| on the x1 = 0 wall; NaN means 0.1 |c|.
    double h1_threshold = std::numeric_limits<double>::quiet_NaN();
};

struct CompatRecord {
    std::string name;
    double violation = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string detail;
};

struct CompatReport {
    std::vector<CompatRecord> records;
    double h = 0.0;

    bool passed() const;
    const CompatRecord& find(const std::string& name) const;
    /// One line per condition: name, violation, tolerance, PASS/FAIL.
    std::string to_text() const;
};

/// Evaluates every hypothesis of the well-posedness result on gridded data:
///
///   div_free             discrete div H (interior cells)
///   H1_nonzero_x1wall    |H1| bounded below on x1 = 0
///   x1wall_u_k{0,1,2}    d^k u / dt^k = 0 on x1 = 0
///   x3wall_auto_k{0,1,2} d^k (u3, H3) / dt^k = 0 on x3 = 0 (these follow
///                        from the trace conditions; reported as a check)
///   trace_N              u3 = H3 = 0 on x3 = 0
///   trace_dNperp         d/dx3 of (p, u1, u2, H1, H2, S) = 0 on x3 = 0
///   trace_d2N            d2/dx3^2 of (u3, H3) = 0 on x3 = 0
///
/// Periodic boxes only get div_free. Never throws for failed conditions.
CompatReport check_all(const EquationOfState& eos, const InitialDatum& datum, const CompatTolerances& tol = {});

}  // namespace mhdq
