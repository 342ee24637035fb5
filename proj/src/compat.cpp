#include "mhdq/compat.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "mhdq/solver.hpp"
#include "mhdq/stencil.hpp"
#include "mhdq/system.hpp"

namespace mhdq {

namespace {

std::string at_cell(int i, int j, int k)
{
    std::ostringstream s;
    s << " at cell (" << i << ", " << j << ", " << k << ")";
    return s.str();
}

double max_abs(const Field& f, std::initializer_list<int> comps)
{
    double m = 0.0;
    f.for_each_cell([&](int i, int j, int k) {
        for (int c : comps) m = std::max(m, std::abs(f(i, j, k, c)));
    });
    return m;
}

double max_abs(const std::vector<Vector8d>& values, std::initializer_list<int> comps)
{
    double m = 0.0;
    for (const auto& v : values)
        for (int c : comps) m = std::max(m, std::abs(v(c)));
    return m;
}

constexpr std::initializer_list<int> all_components = {0, 1, 2, 3, 4, 5, 6, 7};
constexpr std::initializer_list<int> velocity = {idx::u1, idx::u2, idx::u3};
constexpr std::initializer_list<int> normal_pair = {idx::u3, idx::H3};
constexpr std::initializer_list<int> tangential_set = {idx::p, idx::u1, idx::u2, idx::H1, idx::H2, idx::S};

}  // namespace

std::vector<Field> time_derivatives(const EquationOfState& eos, const InitialDatum& datum, int k_max)
{
    if (k_max < 0 || k_max > 2) throw std::invalid_argument("time_derivatives supports k_max in 0..2");
    const Field& U = datum.field;
    const Grid& g = U.grid();
    std::vector<Field> out{U};
    if (k_max == 0) return out;

    std::array<Field, 3> DU;
    for (int a = 0; a < 3; ++a) DU[a] = axis_derivative(U, a, 5);

    Field dt1(g);
    U.for_each_cell([&](int i, int j, int k) {
        try {
            const auto Ahat = ahat(eos, Vector8d(U.at(i, j, k)));
            Vector8d acc = Ahat[0] * DU[0].at(i, j, k);
            acc.noalias() += Ahat[1] * DU[1].at(i, j, k);
            acc.noalias() += Ahat[2] * DU[2].at(i, j, k);
            dt1.at(i, j, k) = -acc;
        } catch (const HyperbolicityError& e) {
            throw HyperbolicityError(std::string(e.what()) + at_cell(i, j, k));
        }
    });
    out.push_back(dt1);
    if (k_max == 1) return out;

    std::array<Field, 3> Ddt1;
    for (int a = 0; a < 3; ++a) Ddt1[a] = axis_derivative(dt1, a, 5);

    Field dt2(g);
    U.for_each_cell([&](int i, int j, int k) {
        const Vector8d Uc = U.at(i, j, k);
        const Vector8d W = dt1.at(i, j, k);
        try {
            const auto Ahat = ahat(eos, Uc);
            const auto dAhat = ahat_derivative(eos, Uc, W);
            Vector8d acc = Vector8d::Zero();
            for (int a = 0; a < 3; ++a) {
                acc.noalias() += dAhat[a] * DU[a].at(i, j, k);
                acc.noalias() += Ahat[a] * Ddt1[a].at(i, j, k);
            }
            dt2.at(i, j, k) = -acc;
        } catch (const HyperbolicityError& e) {
            throw HyperbolicityError(std::string(e.what()) + at_cell(i, j, k));
        }
    });
    out.push_back(dt2);
    return out;
}

bool CompatReport::passed() const
{
    return std::all_of(records.begin(), records.end(), [](const CompatRecord& r) { return r.pass; });
}

const CompatRecord& CompatReport::find(const std::string& name) const
{
    for (const auto& r : records)
        if (r.name == name) return r;
    throw std::out_of_range("no compatibility record named '" + name + "'");
}

std::string CompatReport::to_text() const
{
    std::ostringstream s;
    s << std::scientific << std::setprecision(6);
    for (const auto& r : records) {
        s << std::left << std::setw(22) << r.name << ' ' << std::right << std::setw(14) << r.violation << ' '
          << std::setw(14) << r.tolerance << ' ' << (r.pass ? "PASS" : "FAIL");
        if (!r.detail.empty()) s << "  (" << r.detail << ")";
        s << '\n';
    }
    return s.str();
}

CompatReport check_all(const EquationOfState& eos, const InitialDatum& datum, const CompatTolerances& tol)
{
    const Field& U = datum.field;
    const Grid& g = U.grid();
    const double h = std::max({g.spacing(0), g.spacing(1), g.spacing(2)});
    const double h2 = tol.factor * h * h;

    CompatReport report;
    report.h = h;
    auto add = [&](std::string name, double violation, double scale, std::string detail = {}) {
        const double tolerance = h2 * scale;
        report.records.push_back({std::move(name), violation, tolerance, violation <= tolerance, std::move(detail)});
    };

    Field diff(g);
    U.for_each_cell([&](int i, int j, int k) { diff.at(i, j, k) = U.at(i, j, k) - datum.background; });

    // (a) divergence, relative to the size of its individual terms.
    {
        std::array<Field, 3> D;
        for (int a = 0; a < 3; ++a) D[a] = axis_derivative(diff, a, 5);
        double scale = 0.0;
        U.for_each_cell([&](int i, int j, int k) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a) s += std::abs(D[a](i, j, k, idx::H(a)));
            scale = std::max(scale, s);
        });
        add("div_free", divergence_max(U), scale);
    }

    if (g.kind == DomainKind::periodic) return report;
    if (g.kind != DomainKind::quarter) throw std::invalid_argument("check_all expects quarter-box data");

    const auto dts = time_derivatives(eos, datum, 2);
    std::array<double, 3> scale_k{max_abs(diff, all_components), max_abs(dts[1], all_components),
                                  max_abs(dts[2], all_components)};
    std::array<const Field*, 3> fields{&diff, &dts[1], &dts[2]};

    // (b) |H1| bounded away from zero on the x1 = 0 wall.
    {
        const double threshold = std::isnan(tol.h1_threshold) ? 0.1 * std::abs(datum.background(idx::H1))
                                                              : tol.h1_threshold;
        double min_h1 = std::numeric_limits<double>::infinity();
        for (const auto& v : face_values(U, 0, false, 4, 0)) min_h1 = std::min(min_h1, std::abs(v(idx::H1)));
        std::ostringstream detail;
        detail << "min |H1| = " << min_h1 << ", threshold " << threshold;
        report.records.push_back({"H1_nonzero_x1wall", std::max(0.0, threshold - min_h1), 0.0, min_h1 >= threshold,
                                  detail.str()});
    }

    // (c) u and its formal time derivatives vanish on x1 = 0.
    for (int k = 0; k < 3; ++k) {
        add("x1wall_u_k" + std::to_string(k), max_abs(face_values(*fields[k], 0, false, 4, 0), velocity), scale_k[k]);
    }

    // (d) u3, H3 and their time derivatives on x3 = 0.
    for (int k = 0; k < 3; ++k) {
        add("x3wall_auto_k" + std::to_string(k), max_abs(face_values(*fields[k], 2, false, 4, 0), normal_pair),
            scale_k[k]);
    }

    // (e) trace conditions of the admissible space on x3 = 0.
    add("trace_N", max_abs(face_values(diff, 2, false, 4, 0), normal_pair), scale_k[0]);
    {
        const Field d3 = axis_derivative(diff, 2, 5);
        add("trace_dNperp", max_abs(face_values(diff, 2, false, 6, 1), tangential_set), max_abs(d3, tangential_set));
        const Field d33 = axis_derivative(d3, 2, 5);
        add("trace_d2N", max_abs(face_values(diff, 2, false, 7, 2), normal_pair), max_abs(d33, normal_pair));
    }
    return report;
}

}  // namespace mhdq
