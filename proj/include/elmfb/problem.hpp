#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace elmfb {

using ScalarFunction = std::function<double(double)>;

enum class BoundaryOrder { Value, FirstDerivative };

/// Point boundary operator: order-th derivative of u at `location` equals `rhs`.
struct BoundaryCondition {
    double location = 0.0;
    BoundaryOrder order = BoundaryOrder::Value;
    double rhs = 0.0;
};

/// coeff2 u'' + coeff1 u' + coeff0 u = forcing(x) on [domain_lo, domain_hi],
/// closed by point conditions.
struct LinearODEProblem {
    double domain_lo = 0.0;
    double domain_hi = 1.0;
    double coeff2 = 0.0;
    double coeff1 = 0.0;
    double coeff0 = 0.0;
    ScalarFunction forcing;
    std::vector<BoundaryCondition> boundary_conditions;
    std::optional<ScalarFunction> exact;

    /// Throws Error(InvalidParams) if the domain is empty, there are no
    /// boundary conditions, or a condition lies outside the closed domain.
    void validate() const;
};

/// Applies the differential operator to a pointwise jet (u, u', u'').
inline double apply_operator(const LinearODEProblem& problem, double value, double d1, double d2) noexcept {
    return problem.coeff2 * d2 + problem.coeff1 * d1 + problem.coeff0 * value;
}

struct OscillatorParams {
    double mass = 1.0;
    double omega0 = 80.0;
    double delta = 2.0;
};

/// Closed-form constants of the under-damped solution
/// u(t) = exp(-delta t) * 2A cos(phi + omega t).
struct OscillatorConstants {
    double omega = 0.0;
    double phi = 0.0;
    double amplitude = 0.0;
};

/// Value and analytic derivatives of the exact solution at one time.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

OscillatorConstants oscillator_constants(const OscillatorParams& p);

/// m u'' + mu u' + k u = 0 on [0,1], u(0) = 1, u'(0) = 0, with
/// mu = 2 m delta and k = m omega0^2. Requires 0 <= delta < omega0.
LinearODEProblem oscillator_problem(const OscillatorParams& p);

ScalarFunction oscillator_exact(const OscillatorParams& p);

Jet oscillator_exact_jet(const OscillatorParams& p, double t);

} // namespace elmfb
