#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mhdq {

// Component layout of the state vector U = (p, u1, u2, u3, H1, H2, H3, S).
// This order is used by every kernel, file format and report in the project.
namespace idx {
inline constexpr int p = 0;
inline constexpr int u1 = 1;
inline constexpr int u2 = 2;
inline constexpr int u3 = 3;
inline constexpr int H1 = 4;
inline constexpr int H2 = 5;
inline constexpr int H3 = 6;
inline constexpr int S = 7;

inline constexpr int u(int axis) { return u1 + axis; }
inline constexpr int H(int axis) { return H1 + axis; }
}  // namespace idx

inline constexpr int num_components = 8;

inline constexpr std::array<const char*, num_components> component_names = {
    "p", "u1", "u2", "u3", "H1", "H2", "H3", "S"};

template <typename Scalar>
using State = Eigen::Matrix<Scalar, num_components, 1>;

template <typename Scalar>
using Matrix8 = Eigen::Matrix<Scalar, num_components, num_components>;

using Vector8d = State<double>;
using Matrix8d = Matrix8<double>;
using Vector3d = Eigen::Vector3d;

/// Spatial derivatives of a state: column j holds dU/dx_j.
template <typename Scalar>
using Gradient = Eigen::Matrix<Scalar, num_components, 3>;

inline Vector8d make_state(double p, const Vector3d& u, const Vector3d& H, double S)
{
    Vector8d U;
    U << p, u(0), u(1), u(2), H(0), H(1), H(2), S;
    return U;
}

/// Constant background (p0, 0, (c, 0, 0), 0).
inline Vector8d background_state(double c, double p0 = 0.0)
{
    return make_state(p0, Vector3d::Zero(), Vector3d(c, 0.0, 0.0), 0.0);
}

/// Sign of each component under x3 -> -x3: u3 and H3 flip, the rest do not.
inline Vector8d wall0_parity()
{
    Vector8d s = Vector8d::Ones();
    s(idx::u3) = -1.0;
    s(idx::H3) = -1.0;
    return s;
}

/// Ghost parity used across x1 walls: the whole velocity flips.
inline Vector8d wall1_parity()
{
    Vector8d s = Vector8d::Ones();
    s(idx::u1) = -1.0;
    s(idx::u2) = -1.0;
    s(idx::u3) = -1.0;
    return s;
}

/// Raised when rho <= 0 or rho_p <= 0 (A0 fails to be positive definite).
class HyperbolicityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an operation is handed a state outside its admissible set.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mhdq
