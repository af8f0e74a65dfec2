#pragma once

#include <random>

#include "volterra/core.hpp"

namespace volterra {

/// Outcome of a Picard fixed-point run. converged implies
/// final_step_distance <= picard_tol.
struct SolveResult {
    ScalarField solution;
    int iterations = 0;
    double final_step_distance = 0.0;
    bool converged = false;
    double eta_used = 0.0;
};

/// Successive approximation y_{k+1} = Theta y_k, stopped when the Bielecki
/// distance between consecutive iterates drops below picard_tol. The distance
/// (not the sup norm) is used so the observed geometric decay matches the
/// contraction factor L/eta.
///
/// Requires eta > p.lipschitz(); otherwise the iteration is not a certified
/// contraction and std::invalid_argument is thrown. Hitting max_iter returns
/// a result flagged non-converged rather than throwing.
SolveResult picard_solve(const Problem& p, const ScalarField& y_init, double eta,
                         const WeightFunction& phi, const ToleranceConfig& tol = {});

/// Independent time-stepping oracle: marches the discrete trapezoid equation
/// node by node, resolving the implicit diagonal term with a scalar
/// fixed-point solve. Requires h*L/2 < 1 so that solve contracts. The result
/// satisfies the discrete equation at every node to roundoff-level residual.
ScalarField stepping_solve(const Problem& p, const Grid& grid);

/// Measured contraction factor: max over random field pairs (g1, g2) of
/// d(Theta g1, Theta g2) / d(g1, g2) in the Bielecki metric. Pairs at zero
/// distance are skipped. The result must not exceed L/eta plus the
/// quadrature allowance of contraction_allowance().
double estimate_contraction_factor(const Problem& p, double eta, const WeightFunction& phi,
                                   int trials, std::uint64_t seed);

/// Quadrature-error allowance on the measured contraction factor: how far the
/// discrete trapezoid prefix sums of phi(s)*e^{eta(s-t0)} can overshoot the
/// integral bound, propagated through the metric weights.
double contraction_allowance(const Problem& p, double eta, const WeightFunction& phi);

/// Seeded random test field: polynomial of degree <= max_degree in the
/// normalized coordinate (t - t0)/r with coefficients uniform in [-1, 1].
ScalarField random_polynomial_field(const Grid& grid, std::mt19937_64& rng,
                                    int max_degree = 5);

}  // namespace volterra
