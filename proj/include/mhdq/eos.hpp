#pragma once

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

#include "mhdq/state.hpp"

namespace mhdq {

/// Closure rho = rho(p, S).
///
/// exponential: rho = exp((p - S) / kappa), valid for every p and S.
/// polytropic:  rho = (p exp(-S / cv))^(1 / gamma), valid for p > 0 only.
struct EquationOfState {
    enum class Kind { exponential, polytropic };

    Kind kind = Kind::exponential;
    double kappa = 1.0;
    double gamma = 5.0 / 3.0;
    double cv = 1.0;

    static EquationOfState exponential(double kappa) { return {Kind::exponential, kappa, 5.0 / 3.0, 1.0}; }
    static EquationOfState polytropic(double gamma, double cv) { return {Kind::polytropic, 1.0, gamma, cv}; }

    std::string name() const { return kind == Kind::exponential ? "exponential" : "polytropic"; }
};

template <typename Scalar>
struct Density {
    Scalar rho;
    Scalar rho_p;
};

namespace detail {
inline double value_of(double x) { return x; }

template <typename Derivative>
double value_of(const Eigen::AutoDiffScalar<Derivative>& x)
{
    return x.value();
}
}  // namespace detail

template <typename Scalar>
Density<Scalar> density(const EquationOfState& eos, const Scalar& p, const Scalar& S)
{
    using std::exp;
    using std::pow;

    if (eos.kind == EquationOfState::Kind::exponential) {
        Scalar rho = exp((p - S) / eos.kappa);
        return {rho, Scalar(rho / eos.kappa)};
    }

    if (!(detail::value_of(p) > 0.0)) {
        throw std::domain_error("polytropic equation of state requires p > 0, got p = " +
                                std::to_string(detail::value_of(p)));
    }
    Scalar rho = pow(Scalar(p * exp(-S / eos.cv)), 1.0 / eos.gamma);
    return {rho, Scalar(rho / (eos.gamma * p))};
}

}  // namespace mhdq
