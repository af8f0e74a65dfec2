#include "volterra/solver.hpp"

#include <algorithm>
#include <sstream>

#include "volterra/quadrature.hpp"
#include "volterra/verify.hpp"

namespace volterra {

SolveResult picard_solve(const Problem& p, const ScalarField& y_init, double eta,
                         const WeightFunction& phi, const ToleranceConfig& tol) {
    tol.validate();
    if (!(eta > p.lipschitz())) {
        std::ostringstream msg;
        msg << "picard_solve requires eta > L for a certified contraction (eta=" << eta
            << ", L=" << p.lipschitz() << ")";
        throw std::invalid_argument(msg.str());
    }
    if (y_init.grid() != p.grid()) {
        throw std::invalid_argument("initial field grid does not match problem grid");
    }

    const QuadratureRule rule{tol.quad_order};
    ScalarField y = y_init;
    double step = 0.0;
    for (int k = 1; k <= tol.max_iter; ++k) {
        ScalarField next = apply_volterra_operator(p, y, rule);
        step = bielecki_distance(next, y, eta, phi);
        y = std::move(next);
        if (step <= tol.picard_tol) {
            return SolveResult{std::move(y), k, step, true, eta};
        }
    }
    return SolveResult{std::move(y), tol.max_iter, step, false, eta};
}

namespace {

// Solves u = known + (h/2) * f(t, u) by fixed-point iteration; contracts
// because h*L/2 < 1.
double solve_diagonal(const KernelForm& kernel, double t, double known, double h,
                      double u_start, int node_index) {
    double u = u_start;
    for (int m = 0; m < 200; ++m) {
        const double u_next = known + 0.5 * h * kernel.eval(t, t, u);
        if (!std::isfinite(u_next)) {
            std::ostringstream msg;
            msg << "implicit node solve produced non-finite value at node " << node_index
                << " (t=" << t << ")";
            throw NumericError(msg.str());
        }
        if (std::abs(u_next - u) <= 1e-14 * (1.0 + std::abs(u_next))) {
            return u_next;
        }
        u = u_next;
    }
    std::ostringstream msg;
    msg << "implicit node solve did not converge at node " << node_index << " (t=" << t << ")";
    throw NumericError(msg.str());
}

}  // namespace

ScalarField stepping_solve(const Problem& p, const Grid& grid) {
    const double h = grid.spacing();
    const double L = p.lipschitz();
    if (h * L / 2.0 >= 1.0) {
        throw std::invalid_argument("stepping_solve requires h*L/2 < 1; refine the grid");
    }
    const int n = grid.n();
    const KernelForm& kernel = p.kernel();
    std::vector<double> y(static_cast<std::size_t>(n) + 1, 0.0);

    if (kernel.kind() == KernelKind::StateOnly) {
        std::vector<double> g(static_cast<std::size_t>(n) + 1);
        g[0] = kernel.eval(grid.node(0), grid.node(0), 0.0);
        double acc = 0.0;  // prefix integral through the previous node
        for (int i = 1; i <= n; ++i) {
            const double t = grid.node(i);
            const double known = acc + 0.5 * h * g[static_cast<std::size_t>(i - 1)];
            const double u = solve_diagonal(kernel, t, known, h, y[static_cast<std::size_t>(i - 1)], i);
            y[static_cast<std::size_t>(i)] = u;
            g[static_cast<std::size_t>(i)] = kernel.eval(t, t, u);
            acc += h * (g[static_cast<std::size_t>(i - 1)] + g[static_cast<std::size_t>(i)]) / 2.0;
        }
    } else {
        // The integrand depends on the outer node, so every row is summed fresh.
        std::vector<double> w(static_cast<std::size_t>(n) + 1);
        for (int i = 1; i <= n; ++i) {
            const double t = grid.node(i);
            for (int j = 0; j < i; ++j) {
                w[static_cast<std::size_t>(j)] = kernel.eval(t, grid.node(j), y[static_cast<std::size_t>(j)]);
            }
            double known = 0.0;
            for (int j = 1; j < i; ++j) {
                known += h * (w[static_cast<std::size_t>(j - 1)] + w[static_cast<std::size_t>(j)]) / 2.0;
            }
            known += 0.5 * h * w[static_cast<std::size_t>(i - 1)];
            y[static_cast<std::size_t>(i)] =
                solve_diagonal(kernel, t, known, h, y[static_cast<std::size_t>(i - 1)], i);
        }
    }
    return ScalarField(grid, std::move(y));
}

ScalarField random_polynomial_field(const Grid& grid, std::mt19937_64& rng, int max_degree) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(max_degree) + 1);
    for (double& ck : c) ck = coeff(rng);

    std::vector<double> vals(static_cast<std::size_t>(grid.n()) + 1);
    for (int i = 0; i <= grid.n(); ++i) {
        const double tau = (grid.node(i) - grid.t0()) / grid.r();
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * tau + c[k];
        vals[static_cast<std::size_t>(i)] = v;
    }
    return ScalarField(grid, std::move(vals));
}

double estimate_contraction_factor(const Problem& p, double eta, const WeightFunction& phi,
                                   int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        ScalarField g1 = random_polynomial_field(p.grid(), rng);
        ScalarField g2 = random_polynomial_field(p.grid(), rng);
        const double base = bielecki_distance(g1, g2, eta, phi);
        if (base == 0.0) continue;  // degenerate pair, ratio undefined
        const double mapped = bielecki_distance(apply_volterra_operator(p, g1),
                                                apply_volterra_operator(p, g2), eta, phi);
        best = std::max(best, mapped / base);
    }
    return best;
}

double contraction_allowance(const Problem& p, double eta, const WeightFunction& phi) {
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    const Grid& grid = p.grid();
    const double t0 = grid.t0();
    const double h = grid.spacing();
    ScalarField w = sample_function(
        [&](double s) { return phi(s) * std::exp(eta * (s - t0)); }, grid);

    // Prefix trapezoid error for the weighted integrand, discounted by the
    // metric weight e^{-eta(t-t0)}/phi(t) at the prefix endpoint. The running
    // max of the second differences keeps the bound per-prefix.
    double running_dd = 0.0;
    double best = 0.0;
    for (int i = 1; i <= grid.n(); ++i) {
        if (i < grid.n()) {
            running_dd = std::max(running_dd, std::abs(w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h));
        }
        const double t = grid.node(i);
        const double prefix_err = (t - t0) * h * h / 12.0 * running_dd;
        best = std::max(best, prefix_err * std::exp(-eta * (t - t0)) / phi(t));
    }
    return p.lipschitz() * best;
}

}  // namespace volterra
