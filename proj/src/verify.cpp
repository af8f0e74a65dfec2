#include "volterra/verify.hpp"

#include <algorithm>
#include <sstream>

#include "volterra/solver.hpp"

namespace volterra {

ScalarField defect(const Problem& p, const ScalarField& y, QuadratureRule rule) {
    ScalarField theta = apply_volterra_operator(p, y, rule);
    std::vector<double> vals(static_cast<std::size_t>(y.size()));
    for (int i = 0; i < y.size(); ++i) {
        vals[static_cast<std::size_t>(i)] = std::abs(y[i] - theta[i]);
    }
    return ScalarField(y.grid(), std::move(vals));
}

double bielecki_distance(const ScalarField& g1, const ScalarField& g2, double eta,
                         const WeightFunction& phi) {
    if (g1.grid() != g2.grid()) {
        throw std::invalid_argument("bielecki_distance requires fields on the same grid");
    }
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("eta must be positive");
    }
    const Grid& grid = g1.grid();
    const double t0 = grid.t0();
    double d = 0.0;
    for (int i = 0; i <= grid.n(); ++i) {
        const double t = grid.node(i);
        const double w = phi(t);
        if (!(w > 0.0) || !std::isfinite(w)) {
            std::ostringstream msg;
            msg << "metric weight must be positive and finite; got " << w << " at t=" << t;
            throw std::invalid_argument(msg.str());
        }
        d = std::max(d, std::abs(g1[i] - g2[i]) * std::exp(-eta * (t - t0)) / w);
    }
    return d;
}

namespace {

// Envelope of the trapezoid prefix error for the operator integrand along y:
// (r/12) * max |second difference|, maximized over rows for bivariate kernels.
double operator_integrand_allowance(const Problem& p, const ScalarField& y) {
    const Grid& grid = p.grid();
    const int n = grid.n();
    const KernelForm& kernel = p.kernel();

    if (kernel.kind() == KernelKind::StateOnly) {
        std::vector<double> vals(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            vals[static_cast<std::size_t>(j)] = kernel.eval(grid.node(j), grid.node(j), y[j]);
        }
        return quadrature_error_allowance(ScalarField(grid, std::move(vals)));
    }

    double max_dd = 0.0;
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int i = 2; i <= n; ++i) {
        const double t = grid.node(i);
        for (int j = 0; j <= i; ++j) {
            w[static_cast<std::size_t>(j)] = kernel.eval(t, grid.node(j), y[j]);
        }
        for (int j = 1; j < i; ++j) {
            max_dd = std::max(max_dd, std::abs(w[static_cast<std::size_t>(j + 1)] -
                                               2.0 * w[static_cast<std::size_t>(j)] +
                                               w[static_cast<std::size_t>(j - 1)]));
        }
    }
    return grid.r() / 12.0 * max_dd;
}

}  // namespace

double verify_slack_for(const Problem& p, const ScalarField& y, const ToleranceConfig& tol) {
    return tol.verify_slack + operator_integrand_allowance(p, y);
}

ScalarField make_perturbation(const Problem& p, const ScalarField& y0, PerturbationKind kind,
                              double magnitude, std::uint64_t seed,
                              const WeightFunction& target, const ToleranceConfig& tol) {
    tol.validate();
    if (!(magnitude > 0.0) || !std::isfinite(magnitude)) {
        throw std::invalid_argument("perturbation magnitude must be positive");
    }
    if (y0.grid() != p.grid()) {
        throw std::invalid_argument("base field grid does not match problem grid");
    }
    const Grid& grid = p.grid();
    validate_weight_on(target, grid, tol.mono_tol, /*require_nondecreasing=*/false);

    ScalarField shape = ScalarField::zeros(grid);
    switch (kind) {
        case PerturbationKind::ConstantDefect:
            shape = ScalarField::constant(grid, 1.0);
            break;
        case PerturbationKind::ScaledShape:
            shape = sample_function(
                [&](double t) {
                    const double d = t - grid.t0();
                    return std::exp(d * d / 2.0);
                },
                grid);
            break;
        case PerturbationKind::RandomSmooth: {
            std::mt19937_64 rng(seed);
            ScalarField poly = random_polynomial_field(grid, rng);
            double scale = max_abs(poly);
            int redraws = 0;
            while (scale < 1e-12 && redraws++ < 8) {
                poly = random_polynomial_field(grid, rng);
                scale = max_abs(poly);
            }
            if (scale < 1e-12) {
                throw GenerationError("random perturbation shape degenerated to zero");
            }
            std::vector<double> vals(static_cast<std::size_t>(poly.size()));
            for (int i = 0; i < poly.size(); ++i) vals[static_cast<std::size_t>(i)] = poly[i] / scale;
            shape = ScalarField(grid, std::move(vals));
            break;
        }
    }

    // Multiplicative bisection on the coefficient; defect is monotone in the
    // magnitude for these shapes.
    double c = magnitude;
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<double> vals(static_cast<std::size_t>(y0.size()));
        for (int i = 0; i < y0.size(); ++i) {
            vals[static_cast<std::size_t>(i)] = y0[i] + c * shape[i];
        }
        ScalarField candidate(grid, std::move(vals));
        ScalarField d = defect(p, candidate, QuadratureRule{tol.quad_order});
        const double slack = verify_slack_for(p, candidate, tol);
        bool admissible = true;
        for (int i = 0; i <= grid.n(); ++i) {
            if (d[i] > target(grid.node(i)) + slack) {
                admissible = false;
                break;
            }
        }
        if (admissible) return candidate;
        c /= 2.0;
    }
    std::ostringstream msg;
    msg << "could not rescale perturbation below the defect target after 20 halvings"
        << " (last coefficient " << c << ")";
    throw GenerationError(msg.str());
}

VerifyReport verify_stability(const Problem& p, const ScalarField& y,
                              const WeightFunction& phi, const Certificate& cert,
                              const ToleranceConfig& tol) {
    tol.validate();
    if (y.grid() != p.grid()) {
        throw std::invalid_argument("field grid does not match problem grid");
    }
    const auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    if (!close(cert.lipschitz(), p.lipschitz()) || !close(cert.r(), p.grid().r())) {
        throw std::invalid_argument("certificate was built for a different L or interval");
    }
    const Grid& grid = p.grid();
    validate_weight_on(phi, grid, tol.mono_tol, /*require_nondecreasing=*/true);

    VerifyReport report;
    const double slack = verify_slack_for(p, y, tol);

    ScalarField d = defect(p, y, QuadratureRule{tol.quad_order});
    report.defect_admissible = true;
    for (int i = 0; i <= grid.n(); ++i) {
        const double w = phi(grid.node(i));
        report.max_defect_ratio = std::max(report.max_defect_ratio, d[i] / w);
        if (d[i] > w + slack) report.defect_admissible = false;
    }

    SolveResult solve = picard_solve(p, ScalarField::zeros(grid), cert.eta(), phi, tol);
    report.solver_converged = solve.converged;

    ScalarField bound = cert.bound_on(grid);
    report.bound_satisfied = solve.converged;
    for (int i = 0; i <= grid.n(); ++i) {
        const double dev = std::abs(y[i] - solve.solution[i]);
        report.tightness = std::max(report.tightness, dev / bound[i]);
        if (dev > bound[i] + slack) report.bound_satisfied = false;
    }
    return report;
}

}  // namespace volterra
