#include "mhdq/structure.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mhdq/system.hpp"

namespace mhdq {

Matrix8d SubspaceProjector::matrix() const
{
    Vector8d d = Vector8d::Ones();
    d(idx::u3) = 0.0;
    d(idx::H3) = 0.0;
    if (which == Which::Nperp) d = Vector8d::Ones() - d;
    return d.asDiagonal();
}

Vector3d BoundaryDescriptor::normal() const
{
    return which == Which::gamma0 ? Vector3d(0.0, 0.0, -1.0) : Vector3d(-1.0, 0.0, 0.0);
}

Matrix8d boundary_matrix(const EquationOfState& eos, const Vector8d& U, const BoundaryDescriptor& b)
{
    const MatrixSet<double> m = assemble(eos, U);
    const Vector3d nu = b.normal();
    Matrix8d B = Matrix8d::Zero();
    for (int j = 0; j < 3; ++j)
        if (nu(j) != 0.0) B += nu(j) * m.A[j];
    return B;
}

namespace {

void require_admissible(const Vector8d& U, const BoundaryDescriptor& b)
{
    if (b.which == BoundaryDescriptor::Which::gamma0) {
        if (U(idx::u3) != 0.0 || U(idx::H3) != 0.0)
            throw PreconditionError("gamma0 checks need u3 = H3 = 0 at the state");
    } else if (U(idx::u1) != 0.0 || U(idx::u2) != 0.0 || U(idx::u3) != 0.0) {
        throw PreconditionError("gamma1 checks need u = 0 at the state");
    }
}

void require_in_N(const Vector8d& v, const char* what)
{
    if (v(idx::u3) != 0.0 || v(idx::H3) != 0.0) throw PreconditionError(std::string(what) + " must lie in N");
}

}  // namespace

int check_boundary_rank(const EquationOfState& eos, const Vector8d& U, const BoundaryDescriptor& b, double tol)
{
    require_admissible(U, b);
    const Eigen::JacobiSVD<Matrix8d> svd(boundary_matrix(eos, U, b));
    const auto& sv = svd.singularValues();
    const double cutoff = tol * sv(0);
    return int((sv.array() > cutoff).count());
}

Signature boundary_signature(const EquationOfState& eos, const Vector8d& U, const BoundaryDescriptor& b, double tol)
{
    const Eigen::SelfAdjointEigenSolver<Matrix8d> es(boundary_matrix(eos, U, b), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double cutoff = tol * ev.cwiseAbs().maxCoeff();
    Signature s;
    for (int i = 0; i < num_components; ++i) {
        if (ev(i) > cutoff) ++s.positive;
        else if (ev(i) < -cutoff) ++s.negative;
        else ++s.zero;
    }
    return s;
}

double check_boundary_form(const EquationOfState& eos, const Vector8d& U, const Vector8d& v)
{
    require_admissible(U, BoundaryDescriptor::gamma0());
    require_in_N(v, "v");
    // -sum_j nu0_j A_j = A3
    const MatrixSet<double> m = assemble(eos, U);
    return v.dot(m.A[2] * v);
}

BlockNorms block_norms(const Matrix8d& M)
{
    const Matrix8d PN = SubspaceProjector::N().matrix();
    const Matrix8d PT = SubspaceProjector::Nperp().matrix();
    auto norm = [](const Matrix8d& X) { return X.cwiseAbs().maxCoeff(); };
    return {norm(PN * M * PN), norm(PT * M * PN), norm(PN * M * PT), norm(PT * M * PT)};
}

InvarianceReport check_geometric_invariance(const EquationOfState& eos, const Vector8d& U, int j, bool t_deriv,
                                            std::optional<Vector8d> W)
{
    if (j < 1 || j > 3) throw std::invalid_argument("direction index j must be 1, 2 or 3");
    require_in_N(U, "U");

    InvarianceReport r;
    r.j = j;
    r.t_deriv = t_deriv;
    auto residual = [j](const BlockNorms& b) {
        return j == 3 ? std::max(b.N_to_N, b.Nperp_to_Nperp) : std::max(b.N_to_Nperp, b.Nperp_to_N);
    };
    r.ahat = block_norms(ahat(eos, U)[std::size_t(j - 1)]);
    r.max_residual = residual(r.ahat);
    if (t_deriv) {
        const Vector8d dir = W.value_or(SubspaceProjector::N().apply(Vector8d::Ones()));
        require_in_N(dir, "W");
        r.derivative = block_norms(ahat_derivative(eos, U, dir)[std::size_t(j - 1)]);
        r.max_residual = std::max(r.max_residual, residual(*r.derivative));
    }
    return r;
}

StructureSuiteConfig StructureSuiteConfig::from_samples(int n, std::uint64_t seed)
{
    n = std::max(n, 1);
    return {n, std::max(1, n / 2), std::max(1, n / 2), std::max(1, n / 5), seed};
}

namespace {

class StateSampler {
public:
    StateSampler(const EquationOfState& eos, std::uint64_t seed) : eos_(eos), rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Vector8d any()
    {
        Vector8d U;
        for (int i = 0; i < num_components; ++i) U(i) = uniform(-1.0, 1.0);
        if (eos_.kind == EquationOfState::Kind::polytropic) U(idx::p) = uniform(0.1, 2.0);
        return U;
    }

    Vector8d in_N()
    {
        Vector8d U = any();
        U(idx::u3) = 0.0;
        U(idx::H3) = 0.0;
        return U;
    }

    Vector8d gamma1(double min_h1)
    {
        Vector8d U = any();
        U.segment<3>(idx::u1).setZero();
        const double mag = uniform(min_h1, 1.0);
        U(idx::H1) = uniform(0.0, 1.0) < 0.5 ? -mag : mag;
        return U;
    }

    Vector8d direction_in_N()
    {
        Vector8d W;
        for (int i = 0; i < num_components; ++i) W(i) = uniform(-1.0, 1.0);
        W(idx::u3) = 0.0;
        W(idx::H3) = 0.0;
        return W;
    }

    Vector3d unit_vector()
    {
        Vector3d v;
        do {
            v = Vector3d(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        } while (v.norm() < 1e-3 || v.norm() > 1.0);
        return v.normalized();
    }

private:
    EquationOfState eos_;
    std::mt19937_64 rng_;
};

std::string fmt(double v)
{
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << v;
    return s.str();
}

void run_for_eos(const EquationOfState& eos, const StructureSuiteConfig& cfg, std::uint64_t seed,
                 std::vector<SuiteResult>& out)
{
    const std::string tag = "[" + eos.name() + "]";
    StateSampler rng(eos, seed);

    // Symmetry and positivity of the assembled matrices.
    {
        double asym = 0.0;
        double min_eig = std::numeric_limits<double>::infinity();
        for (int s = 0; s < cfg.symmetry_samples; ++s) {
            const MatrixSet<double> m = assemble(eos, rng.any());
            asym = std::max(asym, (m.A0 - m.A0.transpose()).cwiseAbs().maxCoeff());
            for (const auto& A : m.A) asym = std::max(asym, (A - A.transpose()).cwiseAbs().maxCoeff());
            const Eigen::SelfAdjointEigenSolver<Matrix8d> es(m.A0, Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        }
        out.push_back({"symmetry_exact" + tag, cfg.symmetry_samples, asym, 0.0, asym == 0.0, false, {}});
        out.push_back({"A0_positive_definite" + tag, cfg.symmetry_samples, min_eig, 0.0, min_eig > 0.0, false,
                       "value = smallest eigenvalue of A0, must exceed 0"});
    }

    // Rank stratification of the boundary matrix.
    {
        long bad0 = 0, bad1 = 0;
        for (int s = 0; s < cfg.rank_samples; ++s)
            if (check_boundary_rank(eos, rng.in_N(), BoundaryDescriptor::gamma0()) != 2) ++bad0;
        for (int s = 0; s < cfg.rank_samples; ++s)
            if (check_boundary_rank(eos, rng.gamma1(0.1), BoundaryDescriptor::gamma1()) != 6) ++bad1;
        out.push_back({"rank_gamma0_is_2" + tag, cfg.rank_samples, double(bad0), 0.0, bad0 == 0, false,
                       "value = states with rank != 2"});
        out.push_back({"rank_gamma1_is_6" + tag, cfg.rank_samples, double(bad1), 0.0, bad1 == 0, false,
                       "value = states with rank != 6, |H1| >= 0.1"});

        Vector8d U = rng.any();
        U.segment<3>(idx::u1).setZero();
        U.segment<3>(idx::H1).setZero();
        const int degenerate = check_boundary_rank(eos, U, BoundaryDescriptor::gamma1());
        out.push_back({"rank_gamma1_degenerate" + tag, 1, double(degenerate), 6.0, degenerate < 6, false,
                       "H = u = 0: rank must drop below 6"});
    }

    // Boundary quadratic form on N.
    {
        double worst = 0.0;
        for (int s = 0; s < cfg.form_samples; ++s) {
            const Vector8d U = rng.in_N();
            worst = std::max(worst, std::abs(check_boundary_form(eos, U, rng.direction_in_N())));
        }
        out.push_back({"boundary_form_on_N" + tag, cfg.form_samples, worst, 1e-14, worst <= 1e-14, false, {}});
    }

    // Subspace invariances and their derivatives.
    {
        double worst = 0.0, worst_dt = 0.0, worst_fd = 0.0, literal = 0.0;
        for (int s = 0; s < cfg.invariance_samples; ++s) {
            const Vector8d U = rng.in_N();
            const Vector8d W = rng.direction_in_N();
            for (int j = 1; j <= 3; ++j) {
                worst = std::max(worst, check_geometric_invariance(eos, U, j, false).max_residual);
                const InvarianceReport r = check_geometric_invariance(eos, U, j, true, W);
                worst_dt = std::max(worst_dt, r.max_residual);
                if (j == 3) literal = std::max(literal, r.ahat.N_to_Nperp);
            }
            // Forward-mode derivative against central differences in the state.
            const double step = 1e-6;
            const auto ad = ahat_derivative(eos, U, W);
            const auto plus = ahat(eos, Vector8d(U + step * W));
            const auto minus = ahat(eos, Vector8d(U - step * W));
            for (int j = 0; j < 3; ++j) {
                const Matrix8d fd = (plus[std::size_t(j)] - minus[std::size_t(j)]) / (2.0 * step);
                worst_fd = std::max(worst_fd, (fd - ad[std::size_t(j)]).cwiseAbs().maxCoeff());
            }
        }
        const long n = cfg.invariance_samples;
        out.push_back({"geometric_invariance" + tag, 3 * n, worst, 1e-12, worst <= 1e-12, false, {}});
        out.push_back({"geometric_invariance_dt" + tag, 3 * n, worst_dt, 1e-12, worst_dt <= 1e-12, false, {}});
        out.push_back({"derivative_vs_fd" + tag, n, worst_fd, 1e-7, worst_fd <= 1e-7, false,
                       "central differences, step 1e-6"});
        out.push_back({"x3_literal_N_into_N" + tag, n, literal, 0.0, literal == 0.0, true,
                       literal > 0.0 ? "Ahat3 N is not inside N; Ahat3 swaps N and Nperp instead"
                                     : "Ahat3 N inside N"});
    }

    // rhs consistency with the matrix form, and wave-speed bounds.
    {
        double worst_rhs = 0.0, worst_speed = 0.0, worst_dir = 0.0;
        for (int s = 0; s < cfg.symmetry_samples; ++s) {
            const Vector8d U = rng.any();
            Gradient<double> g;
            for (int c = 0; c < 3; ++c) g.col(c) = rng.any() - rng.any();
            const MatrixSet<double> m = assemble(eos, U);
            const Vector8d dUdt = rhs(eos, U, g);
            Vector8d residual = m.A0 * dUdt;
            double scale = (m.A0 * dUdt).cwiseAbs().maxCoeff();
            for (int j = 0; j < 3; ++j) {
                residual += m.A[std::size_t(j)] * g.col(j);
                scale = std::max(scale, (m.A[std::size_t(j)] * g.col(j)).cwiseAbs().maxCoeff());
            }
            worst_rhs = std::max(worst_rhs, residual.cwiseAbs().maxCoeff() / std::max(scale, 1e-300));

            const double bound = wave_speed_bound(eos, U);
            const double closed = characteristic_speed_bound(eos, U);
            worst_speed = std::max(worst_speed, std::abs(bound - closed) / std::max(1.0, bound));

            const Vector3d nu = rng.unit_vector();
            Matrix8d An = Matrix8d::Zero();
            for (int j = 0; j < 3; ++j) An += nu(j) * m.A[std::size_t(j)];
            const Eigen::GeneralizedSelfAdjointEigenSolver<Matrix8d> es(An, m.A0, Eigen::EigenvaluesOnly);
            worst_dir = std::max(worst_dir, es.eigenvalues().cwiseAbs().maxCoeff() / (std::sqrt(3.0) * bound));
        }
        const long n = cfg.symmetry_samples;
        out.push_back({"rhs_consistency" + tag, n, worst_rhs, 1e-13, worst_rhs <= 1e-13, false, {}});
        out.push_back({"wave_speed_closed_form" + tag, n, worst_speed, 1e-12, worst_speed <= 1e-12, false, {}});
        out.push_back({"direction_speed_bound" + tag, n, worst_dir, 1.0, worst_dir <= 1.0, false,
                       "value = max rho(sum nu_j Ahat_j) / (sqrt(3) bound)"});
    }

    // Sign counts of the boundary matrices, for inspection.
    {
        Vector8d U0 = rng.in_N();
        const Signature s0 = boundary_signature(eos, U0, BoundaryDescriptor::gamma0());
        const Signature s1 = boundary_signature(eos, rng.gamma1(0.1), BoundaryDescriptor::gamma1());
        auto text = [](const Signature& s) {
            return "+" + std::to_string(s.positive) + " 0:" + std::to_string(s.zero) + " -" + std::to_string(s.negative);
        };
        out.push_back({"signature_gamma0" + tag, 1, double(s0.positive), 0.0, true, true, text(s0)});
        out.push_back({"signature_gamma1" + tag, 1, double(s1.positive), 0.0, true, true, text(s1)});
    }
}

}  // namespace

std::vector<SuiteResult> run_structure_suites(const StructureSuiteConfig& config)
{
    std::vector<SuiteResult> out;
    run_for_eos(EquationOfState::exponential(1.0), config, config.seed, out);
    run_for_eos(EquationOfState::polytropic(5.0 / 3.0, 1.0), config, config.seed ^ 0x9e3779b97f4a7c15ULL, out);
    return out;
}

std::string format_suite_table(const std::vector<SuiteResult>& results)
{
    std::ostringstream s;
    s << std::left << std::setw(42) << "check" << std::right << std::setw(7) << "cases" << std::setw(12) << "value"
      << std::setw(12) << "tolerance" << "  result\n";
    for (const auto& r : results) {
        s << std::left << std::setw(42) << r.name << std::right << std::setw(7) << r.cases << std::setw(12)
          << fmt(r.value) << std::setw(12) << fmt(r.tolerance) << "  "
          << (r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL"));
        if (!r.detail.empty()) s << "  " << r.detail;
        s << '\n';
    }
    return s.str();
}

}  // namespace mhdq
