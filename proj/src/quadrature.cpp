#include "volterra/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace volterra {

namespace {

// Shared prefix-sum accumulation. Both kernel forms and both rules route
// through this loop so that identical integrand samples give identical
// prefix values, including rounding.
std::vector<double> prefix_integral(std::span<const double> v, double h, QuadKind kind) {
    std::vector<double> out(v.size(), 0.0);
    if (kind == QuadKind::Trapezoid) {
        double acc = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            acc += h * (v[i - 1] + v[i]) / 2.0;
            out[i] = acc;
        }
    } else {
        // Composite Simpson on even prefixes, trapezoid correction on the
        // final interval of odd prefixes.
        double simpson_acc = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (i % 2 == 0) {
                simpson_acc += h / 3.0 * (v[i - 2] + 4.0 * v[i - 1] + v[i]);
                out[i] = simpson_acc;
            } else {
                out[i] = simpson_acc + h * (v[i - 1] + v[i]) / 2.0;
            }
        }
    }
    return out;
}

double eval_kernel_checked(const KernelForm& k, double t, double s, double y) {
    const double v = k.eval(t, s, y);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "kernel evaluated to non-finite value at t=" << t << ", s=" << s;
        throw NumericError(msg.str());
    }
    return v;
}

}  // namespace

ScalarField cumulative_integral(const ScalarField& g, QuadratureRule rule) {
    return ScalarField(g.grid(), prefix_integral(g.values(), g.grid().spacing(), rule.kind));
}

ScalarField apply_volterra_operator(const Problem& p, const ScalarField& y,
                                    QuadratureRule rule) {
    if (y.grid() != p.grid()) {
        throw std::invalid_argument("field grid does not match problem grid");
    }
    const Grid& grid = p.grid();
    const double h = grid.spacing();
    const int n = grid.n();

    if (p.kernel().kind() == KernelKind::StateOnly) {
        std::vector<double> w(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            const double s = grid.node(j);
            w[static_cast<std::size_t>(j)] = eval_kernel_checked(p.kernel(), s, s, y[j]);
        }
        return ScalarField(grid, prefix_integral(w, h, rule.kind));
    }

    // Bivariate: the integrand changes with the outer node, so each prefix is
    // recomputed from scratch.
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        const double t = grid.node(i);
        for (int j = 0; j <= i; ++j) {
            w[static_cast<std::size_t>(j)] = eval_kernel_checked(p.kernel(), t, grid.node(j), y[j]);
        }
        out[static_cast<std::size_t>(i)] =
            prefix_integral(std::span<const double>(w.data(), static_cast<std::size_t>(i) + 1), h,
                            rule.kind)[static_cast<std::size_t>(i)];
    }
    return ScalarField(grid, std::move(out));
}

double quadrature_error_allowance(const ScalarField& integrand) {
    const auto v = integrand.values();
    double max_dd = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        max_dd = std::max(max_dd, std::abs(v[i + 1] - 2.0 * v[i] + v[i - 1]));
    }
    return integrand.grid().r() / 12.0 * max_dd;
}

WeightedInequalityReport check_weighted_integral_inequality(const WeightFunction& phi,
                                                            double eta, const Grid& grid,
                                                            double mono_tol) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("eta must be positive");
    }
    validate_weight_on(phi, grid, mono_tol, /*require_nondecreasing=*/true);

    const double t0 = grid.t0();
    ScalarField w = sample_function(
        [&](double s) { return phi(s) * std::exp(eta * (s - t0)); }, grid);
    ScalarField lhs = cumulative_integral(w);

    WeightedInequalityReport report;
    report.allowance = quadrature_error_allowance(w);
    double max_violation = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid.n(); ++i) {
        const double t = grid.node(i);
        const double rhs = phi(t) / eta * std::exp(eta * (t - t0));
        max_violation = std::max(max_violation, lhs[i] - rhs);
    }
    report.max_violation = max_violation;
    report.pass = max_violation <= report.allowance;
    return report;
}

}  // namespace volterra
