#pragma once

#include <optional>

#include "volterra/core.hpp"

namespace volterra {

/// Certificate bound factor e^{eta*r} / (1 - L/eta). Requires eta > L, where
/// it is finite and > 1; the factor multiplies the admissible-defect weight
/// to bound |y - y0|.
double bound_factor(double lipschitz, double r, double eta);

/// The factor is free in eta > L; this returns its unique minimizer
/// eta* = (L + sqrt(L^2 + 4L/r)) / 2, the root of eta*(eta - L) = L/r.
double optimal_eta(double lipschitz, double r);

enum class StabilityForm { HyersUlam, HyersUlamRassias };

/// Stability certificate: for every y whose defect is bounded by the weight
/// pointwise, the exact solution y0 satisfies |y(t) - y0(t)| <= factor * weight(t).
class Certificate {
public:
    Certificate(double eta, double lipschitz, double r, StabilityForm form,
                WeightFunction weight);

    double eta() const { return eta_; }
    double lipschitz() const { return lipschitz_; }
    double r() const { return r_; }
    double factor() const { return factor_; }
    StabilityForm form() const { return form_; }
    const WeightFunction& weight() const { return weight_; }

    /// Defect tolerance epsilon of a Hyers-Ulam certificate.
    double epsilon() const;

    double bound_at(double t) const { return factor_ * weight_(t); }

    /// The bound factor * weight sampled on a grid; strictly positive.
    ScalarField bound_on(const Grid& grid) const;

private:
    double eta_;
    double lipschitz_;
    double r_;
    double factor_;
    StabilityForm form_;
    WeightFunction weight_;
};

/// Hyers-Ulam-Rassias certificate for a nondecreasing positive weight phi.
/// Throws std::invalid_argument unless eta > L (the contraction hypothesis).
Certificate hur_bound(const WeightFunction& phi, double lipschitz, const Grid& grid,
                      double eta, double mono_tol = 1e-12);

/// Hyers-Ulam certificate, the constant-weight case: bound eps * e^{eta*r} / (1 - L/eta).
Certificate hu_bound(double eps, double lipschitz, double r, double eta);

/// Smallest K such that the running integral of phi stays below K*phi(t) at
/// every node: grid max of cumulative_integral(phi)(t) / phi(t). The absolute
/// value around the running integral is redundant for phi > 0 and t >= t0.
double minimal_K(const WeightFunction& phi, const Grid& grid);

/// Applicability of the classical stability conditions: L*r < 1 for the
/// Hyers-Ulam case, and existence of K with both the minimal-K inequality and
/// K*L < 1 for the Hyers-Ulam-Rassias case.
struct ClassicReport {
    double lr_product = 0.0;
    bool hu_applicable = false;
    std::optional<double> k_min;
    std::optional<double> kl_product;       ///< k_min * L
    std::optional<bool> hur_applicable;     ///< k_min * L < 1
};

ClassicReport check_classic_conditions(double lipschitz, const Grid& grid,
                                       const std::optional<WeightFunction>& phi = std::nullopt);

/// Empirical lower estimate of the Lipschitz constant by sampled difference
/// quotients in the state argument. The true supremum may exceed the sampled
/// maximum; a user-declared L takes precedence when available.
double estimate_lipschitz(const KernelForm& kernel, const Grid& grid, double y_lo,
                          double y_hi, int samples, std::uint64_t seed);

}  // namespace volterra
