#include "elmfb/problem.hpp"

#include <cmath>
#include <string>

#include "elmfb/error.hpp"

namespace elmfb {

std::string_view to_string(ErrorCategory category) noexcept {
    switch (category) {
    case ErrorCategory::InvalidParams: return "invalid-params";
    case ErrorCategory::CoverageGap: return "coverage-gap";
    case ErrorCategory::IndexOutOfRange: return "index-out-of-range";
    case ErrorCategory::DegenerateRow: return "degenerate-row";
    case ErrorCategory::NumericalFailure: return "numerical-failure";
    case ErrorCategory::DimensionMismatch: return "dimension-mismatch";
    case ErrorCategory::UnknownTarget: return "unknown-target";
    case ErrorCategory::ConfigParse: return "config-parse";
    }
    return "unknown";
}

void LinearODEProblem::validate() const {
    if (!(domain_hi > domain_lo)) {
        throw Error(ErrorCategory::InvalidParams, "domain_hi must exceed domain_lo");
    }
    if (boundary_conditions.empty()) {
        throw Error(ErrorCategory::InvalidParams, "at least one boundary condition is required");
    }
    for (const auto& bc : boundary_conditions) {
        if (!(bc.location >= domain_lo && bc.location <= domain_hi)) {
            throw Error(ErrorCategory::InvalidParams,
                        "boundary condition at " + std::to_string(bc.location) + " lies outside the domain");
        }
    }
    if (!forcing) {
        throw Error(ErrorCategory::InvalidParams, "forcing function is empty");
    }
}

namespace {

void check_oscillator(const OscillatorParams& p) {
    if (!(p.mass > 0.0) || !(p.omega0 > 0.0) || !(p.delta >= 0.0)) {
        throw Error(ErrorCategory::InvalidParams, "oscillator requires mass > 0, omega0 > 0, delta >= 0");
    }
    if (!(p.delta < p.omega0)) {
        throw Error(ErrorCategory::InvalidParams, "oscillator must be under-damped (delta < omega0)");
    }
}

} // namespace

OscillatorConstants oscillator_constants(const OscillatorParams& p) {
    check_oscillator(p);
    OscillatorConstants k;
    k.omega = std::sqrt(p.omega0 * p.omega0 - p.delta * p.delta);
    k.phi = std::atan(-p.delta / k.omega);
    k.amplitude = 1.0 / (2.0 * std::cos(k.phi));
    return k;
}

LinearODEProblem oscillator_problem(const OscillatorParams& p) {
    check_oscillator(p);
    LinearODEProblem problem;
    problem.domain_lo = 0.0;
    problem.domain_hi = 1.0;
    problem.coeff2 = p.mass;
    problem.coeff1 = 2.0 * p.mass * p.delta;
    problem.coeff0 = p.mass * p.omega0 * p.omega0;
    problem.forcing = [](double) { return 0.0; };
    problem.boundary_conditions = {
        {0.0, BoundaryOrder::Value, 1.0},
        {0.0, BoundaryOrder::FirstDerivative, 0.0},
    };
    problem.exact = oscillator_exact(p);
    return problem;
}

ScalarFunction oscillator_exact(const OscillatorParams& p) {
    const auto k = oscillator_constants(p);
    const double delta = p.delta;
    return [k, delta](double t) {
        return std::exp(-delta * t) * 2.0 * k.amplitude * std::cos(k.phi + k.omega * t);
    };
}

Jet oscillator_exact_jet(const OscillatorParams& p, double t) {
    const auto k = oscillator_constants(p);
    const double decay = std::exp(-p.delta * t);
    const double c = std::cos(k.phi + k.omega * t);
    const double s = std::sin(k.phi + k.omega * t);
    const double two_a = 2.0 * k.amplitude;
    // u = e^{-dt} 2A cos(.), differentiated twice by the product rule.
    Jet jet;
    jet.value = decay * two_a * c;
    jet.d1 = decay * two_a * (-p.delta * c - k.omega * s);
    jet.d2 = decay * two_a * ((p.delta * p.delta - k.omega * k.omega) * c + 2.0 * p.delta * k.omega * s);
    return jet;
}

} // namespace elmfb
