#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "mhdq/eos.hpp"
#include "mhdq/state.hpp"

namespace mhdq {

/// Coefficients of the symmetric quasilinear form
///
///     A0(U) dU/dt + sum_j A_j(U) dU/dx_j = 0
///
/// together with Ahat_j = A0^{-1} A_j.
template <typename Scalar>
struct MatrixSet {
    Matrix8<Scalar> A0;
    std::array<Matrix8<Scalar>, 3> A;
    std::array<Matrix8<Scalar>, 3> Ahat;
    Density<Scalar> density;
};

namespace detail {

template <typename Scalar>
Density<Scalar> checked_density(const EquationOfState& eos, const State<Scalar>& U)
{
    Density<Scalar> d;
    try {
        d = density(eos, U(idx::p), U(idx::S));
    } catch (const std::domain_error& e) {
        throw HyperbolicityError(e.what());
    }
    const double rho = value_of(d.rho);
    const double rho_p = value_of(d.rho_p);
    if (!(rho > 0.0) || !(rho_p > 0.0) || !std::isfinite(rho) || !std::isfinite(rho_p)) {
        std::ostringstream msg;
        msg << "hyperbolicity lost: rho = " << rho << ", rho_p = " << rho_p;
        throw HyperbolicityError(msg.str());
    }
    return d;
}

template <typename Scalar>
Matrix8<Scalar> flux_matrix(const State<Scalar>& U, const Density<Scalar>& d, int j)
{
    Matrix8<Scalar> A = Matrix8<Scalar>::Zero();
    const Scalar uj = U(idx::u(j));
    const Scalar Hj = U(idx::H(j));

    // Each off-diagonal pair is written once from a single value.
    auto set_pair = [&A](int a, int b, const Scalar& v) {
        A(a, b) = v;
        A(b, a) = v;
    };

    A(idx::p, idx::p) = Scalar(d.rho_p / d.rho) * uj;
    set_pair(idx::p, idx::u(j), Scalar(1.0));
    for (int k = 0; k < 3; ++k) {
        A(idx::u(k), idx::u(k)) = d.rho * uj;
        A(idx::H(k), idx::H(k)) = uj;
        for (int i = 0; i < 3; ++i) {
            // (delta_j (x) H - H_j I) entry at row u_k, column H_i
            const Scalar outer = (k == j) ? Scalar(U(idx::H(i))) : Scalar(0.0);
            const Scalar diag = (k == i) ? Hj : Scalar(0.0);
            set_pair(idx::u(k), idx::H(i), Scalar(outer - diag));
        }
    }
    A(idx::S, idx::S) = uj;
    return A;
}

/// A0 is diag(rho_p / rho, rho I3, I3, 1), so A0^{-1} A scales rows.
template <typename Scalar>
Matrix8<Scalar> solve_a0(const Density<Scalar>& d, const Matrix8<Scalar>& A)
{
    Matrix8<Scalar> Ahat = A;
    const Scalar inv_pp = d.rho / d.rho_p;
    const Scalar inv_rho = Scalar(1.0) / d.rho;
    Ahat.row(idx::p) *= inv_pp;
    for (int k = 0; k < 3; ++k) Ahat.row(idx::u(k)) *= inv_rho;
    return Ahat;
}

}  // namespace detail

template <typename Scalar>
Matrix8<Scalar> a0_matrix(const Density<Scalar>& d)
{
    Matrix8<Scalar> A0 = Matrix8<Scalar>::Zero();
    A0(idx::p, idx::p) = d.rho_p / d.rho;
    for (int k = 0; k < 3; ++k) {
        A0(idx::u(k), idx::u(k)) = d.rho;
        A0(idx::H(k), idx::H(k)) = Scalar(1.0);
    }
    A0(idx::S, idx::S) = Scalar(1.0);
    return A0;
}

/// Assembles A0, A_1..3 and Ahat_1..3 at U. Throws HyperbolicityError
/// unless rho > 0 and rho_p > 0.
template <typename Scalar>
MatrixSet<Scalar> assemble(const EquationOfState& eos, const State<Scalar>& U)
{
    MatrixSet<Scalar> m;
    m.density = detail::checked_density(eos, U);
    m.A0 = a0_matrix(m.density);
    for (int j = 0; j < 3; ++j) {
        m.A[j] = detail::flux_matrix(U, m.density, j);
        m.Ahat[j] = detail::solve_a0(m.density, m.A[j]);
    }
    return m;
}

/// Ahat_1..3 only; this is the path used by the stencil kernels.
template <typename Scalar>
std::array<Matrix8<Scalar>, 3> ahat(const EquationOfState& eos, const State<Scalar>& U)
{
    const Density<Scalar> d = detail::checked_density(eos, U);
    std::array<Matrix8<Scalar>, 3> out;
    for (int j = 0; j < 3; ++j) out[j] = detail::solve_a0(d, detail::flux_matrix(U, d, j));
    return out;
}

/// dU/dt = -sum_j Ahat_j(U) dU/dx_j.
template <typename Scalar>
State<Scalar> rhs(const EquationOfState& eos, const State<Scalar>& U, const Gradient<Scalar>& grad)
{
    const auto Ahat = ahat(eos, U);
    State<Scalar> dUdt = Ahat[0] * grad.col(0);
    dUdt.noalias() += Ahat[1] * grad.col(1);
    dUdt.noalias() += Ahat[2] * grad.col(2);
    return -dUdt;
}

/// max_j of the spectral radius of Ahat_j(U), from a generalized symmetric
/// eigensolve of the pencil (A_j, A0).
double wave_speed_bound(const EquationOfState& eos, const Vector8d& U);

/// Spectral radius of Ahat_j(U) in closed form, |u_j| + c_f, with the fast
/// magnetosonic speed c_f built from the sound speed 1/sqrt(rho_p) and the
/// Alfven speeds. Agrees with the eigensolve and is exactly invariant under
/// the wall parities, which the solver relies on.
double characteristic_speed(const EquationOfState& eos, const Vector8d& U, int j);

/// max_j characteristic_speed(eos, U, j).
double characteristic_speed_bound(const EquationOfState& eos, const Vector8d& U);

/// Directional derivative D_U Ahat_j(U)[W] for j = 1..3, by forward-mode
/// automatic differentiation through assemble().
std::array<Matrix8d, 3> ahat_derivative(const EquationOfState& eos, const Vector8d& U, const Vector8d& W);

}  // namespace mhdq
