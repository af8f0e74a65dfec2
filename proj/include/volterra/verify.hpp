#pragma once

#include "volterra/core.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/stability.hpp"

namespace volterra {

/// Empirical verdict on one perturbed solution against a certificate.
struct VerifyReport {
    bool defect_admissible = false;  ///< defect <= phi + slack at all nodes
    double max_defect_ratio = 0.0;   ///< max over nodes of defect(t) / phi(t)
    bool bound_satisfied = false;    ///< |y - y0| <= bound + slack at all nodes
    double tightness = 0.0;          ///< max |y - y0|(t) / bound(t); <= 1 when satisfied
    bool solver_converged = false;   ///< Picard run for y0 converged
};

/// Pointwise residual t -> |y(t) - (Theta y)(t)|. Zero, up to quadrature
/// allowance, exactly when y solves the discrete equation.
ScalarField defect(const Problem& p, const ScalarField& y, QuadratureRule rule = {});

/// Grid Bielecki distance
///   d(g1, g2) = max over nodes of |g1 - g2| * e^{-eta(t - t0)} / phi(t),
/// the computable version of inf{ C : |g1 - g2| e^{-eta(t-t0)} <= C phi(t) };
/// on a finite grid the max attains that inf. Satisfies the metric axioms
/// exactly on a shared grid and is nonincreasing in eta.
double bielecki_distance(const ScalarField& g1, const ScalarField& g2, double eta,
                         const WeightFunction& phi);

enum class PerturbationKind { ConstantDefect, ScaledShape, RandomSmooth };

/// Builds a candidate y near y0 whose defect stays below target(t) at every
/// node (plus the quadrature slack). The perturbation shape depends on kind:
/// a constant shift, the exp((t-t0)^2/2) growth profile, or a seeded random
/// polynomial. Its coefficient starts at magnitude and is halved until the
/// defect is admissible; throws GenerationError after 20 rescalings.
ScalarField make_perturbation(const Problem& p, const ScalarField& y0, PerturbationKind kind,
                              double magnitude, std::uint64_t seed,
                              const WeightFunction& target, const ToleranceConfig& tol = {});

/// Full empirical check of a certificate: measures the defect of y against
/// phi, computes the exact discrete solution via picard_solve, and compares
/// |y - y0| with the certificate bound nodewise. Whenever the defect is
/// admissible the bound must hold; tightness quantifies how conservative the
/// bound is. A non-converged solve is reported, not thrown.
VerifyReport verify_stability(const Problem& p, const ScalarField& y,
                              const WeightFunction& phi, const Certificate& cert,
                              const ToleranceConfig& tol = {});

/// Slack used by the admissibility and bound checks: verify_slack plus the
/// c*h^2 quadrature allowance of the operator applied along y.
double verify_slack_for(const Problem& p, const ScalarField& y, const ToleranceConfig& tol);

}  // namespace volterra
