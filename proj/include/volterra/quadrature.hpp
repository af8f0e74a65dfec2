#pragma once

#include "volterra/core.hpp"

namespace volterra {

/// Composite quadrature rule on a uniform grid. Trapezoid is the default;
/// Simpson prefix integrals fall back to a trapezoid correction on the last
/// interval of odd prefixes, so their order is mixed there.
struct QuadratureRule {
    QuadKind kind = QuadKind::Trapezoid;
};

/// Running integral t_i -> integral of g over [t0, t_i]. output[0] == 0.
/// Trapezoid is exact for piecewise-linear integrands.
ScalarField cumulative_integral(const ScalarField& g, QuadratureRule rule = {});

/// Applies the Volterra operator (Theta y)(t) = integral over [t0, t] of the
/// kernel along y.
///
/// StateOnly kernels need one cumulative pass over s -> f(s, y(s)). Bivariate
/// kernels re-integrate s -> f(t_i, s, y(s)) freshly for every node t_i,
/// O(n^2) kernel evaluations in total. Both paths share the same prefix-sum
/// accumulation, so a bivariate kernel that ignores t reproduces the
/// StateOnly result bit for bit.
///
/// Throws NumericError naming (t, s) if the kernel evaluates non-finite.
ScalarField apply_volterra_operator(const Problem& p, const ScalarField& y,
                                    QuadratureRule rule = {});

/// Composite-trapezoid error allowance for prefix integrals of g:
/// (r/12) * max |second difference of g|, the standard c*h^2 bound with the
/// second derivative estimated from the samples themselves.
double quadrature_error_allowance(const ScalarField& integrand);

struct WeightedInequalityReport {
    double max_violation = 0.0;  ///< max over nodes of lhs - rhs
    double allowance = 0.0;      ///< quadrature-error allowance
    bool pass = false;           ///< max_violation <= allowance
};

/// Checks the weighted-integral inequality behind the contraction estimate:
/// integral over [t0, t] of phi(s)*e^{eta(s-t0)} ds <= (phi(t)/eta)*e^{eta(t-t0)}
/// for nondecreasing positive phi and eta > 0. Holds for every eta > 0 up to
/// quadrature error.
WeightedInequalityReport check_weighted_integral_inequality(const WeightFunction& phi,
                                                            double eta, const Grid& grid,
                                                            double mono_tol = 1e-12);

}  // namespace volterra
