#include "mhdq/system.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace mhdq {

double wave_speed_bound(const EquationOfState& eos, const Vector8d& U)
{
    const MatrixSet<double> m = assemble(eos, U);
    double bound = 0.0;
    for (int j = 0; j < 3; ++j) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix8d> solver(m.A[j], m.A0, Eigen::EigenvaluesOnly);
        bound = std::max(bound, solver.eigenvalues().cwiseAbs().maxCoeff());
    }
    return bound;
}

double characteristic_speed(const EquationOfState& eos, const Vector8d& U, int j)
{
    const Density<double> d = detail::checked_density(eos, U);
    const double a2 = 1.0 / d.rho_p;
    const double H1 = U(idx::H1), H2 = U(idx::H2), H3 = U(idx::H3);
    const double Hj = U(idx::H(j));
    const double b2 = (H1 * H1 + H2 * H2 + H3 * H3) / d.rho;
    const double bj2 = Hj * Hj / d.rho;
    const double sum = a2 + b2;
    const double disc = std::max(0.0, sum * sum - 4.0 * a2 * bj2);
    const double cf = std::sqrt(0.5 * (sum + std::sqrt(disc)));
    return std::abs(U(idx::u(j))) + cf;
}

double characteristic_speed_bound(const EquationOfState& eos, const Vector8d& U)
{
    return std::max({characteristic_speed(eos, U, 0), characteristic_speed(eos, U, 1),
                     characteristic_speed(eos, U, 2)});
}

std::array<Matrix8d, 3> ahat_derivative(const EquationOfState& eos, const Vector8d& U, const Vector8d& W)
{
    using Dual = Eigen::AutoDiffScalar<Eigen::Matrix<double, 1, 1>>;
    State<Dual> Ud;
    for (int i = 0; i < num_components; ++i) {
        Ud(i).value() = U(i);
        Ud(i).derivatives()(0) = W(i);
    }
    const auto Ahat = ahat(eos, Ud);
    std::array<Matrix8d, 3> out;
    for (int j = 0; j < 3; ++j) {
        for (int r = 0; r < num_components; ++r) {
            for (int c = 0; c < num_components; ++c) {
                const auto& der = Ahat[j](r, c).derivatives();
                out[j](r, c) = der.size() > 0 ? der(0) : 0.0;
            }
        }
    }
    return out;
}

}  // namespace mhdq
