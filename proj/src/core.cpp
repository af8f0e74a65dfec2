#include "volterra/core.hpp"

#include <algorithm>
#include <sstream>

namespace volterra {

Grid::Grid(double t0, double r, int n) : t0_(t0), r_(r), n_(n) {
    if (!std::isfinite(t0) || !std::isfinite(r)) {
        throw std::invalid_argument("grid endpoints must be finite");
    }
    if (r <= 0.0) {
        throw std::invalid_argument("grid length r must be positive");
    }
    if (n < 2) {
        throw std::invalid_argument("grid needs at least 2 subintervals");
    }
    nodes_.resize(static_cast<std::size_t>(n) + 1);
    const double h = r / n;
    for (int i = 0; i < n; ++i) {
        nodes_[static_cast<std::size_t>(i)] = t0 + i * h;
    }
    // Pin the right endpoint so nodes[n] == t0 + r holds exactly.
    nodes_[static_cast<std::size_t>(n)] = t0 + r;
}

Grid make_grid(double t0, double r, int n) { return Grid(t0, r, n); }

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid_.n()) + 1) {
        throw std::invalid_argument("field length must be grid.n() + 1");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "non-finite field value at node " << i << " (t=" << grid_.node(static_cast<int>(i)) << ")";
            throw NumericError(msg.str());
        }
    }
}

ScalarField ScalarField::zeros(const Grid& grid) {
    return ScalarField(grid, std::vector<double>(static_cast<std::size_t>(grid.n()) + 1, 0.0));
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
    return ScalarField(grid, std::vector<double>(static_cast<std::size_t>(grid.n()) + 1, value));
}

ScalarField sample_function(const std::function<double(double)>& h, const Grid& grid) {
    std::vector<double> vals(static_cast<std::size_t>(grid.n()) + 1);
    for (int i = 0; i <= grid.n(); ++i) {
        const double t = grid.node(i);
        const double v = h(t);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "function evaluated to non-finite value at node " << i << " (t=" << t << ")";
            throw NumericError(msg.str());
        }
        vals[static_cast<std::size_t>(i)] = v;
    }
    return ScalarField(grid, std::move(vals));
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid()) {
        throw std::invalid_argument("fields live on different grids");
    }
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

KernelForm KernelForm::state_only(StateOnlyFn f) {
    if (!f) throw std::invalid_argument("null kernel");
    return KernelForm(KernelKind::StateOnly,
                      [f = std::move(f)](double, double s, double y) { return f(s, y); });
}

KernelForm KernelForm::bivariate(BivariateFn f) {
    if (!f) throw std::invalid_argument("null kernel");
    return KernelForm(KernelKind::Bivariate, std::move(f));
}

Problem::Problem(KernelForm kernel, Grid grid, double lipschitz)
    : kernel_(std::move(kernel)), grid_(std::move(grid)), lipschitz_(lipschitz) {
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
        throw std::invalid_argument("Lipschitz constant must be positive and finite");
    }
}

WeightFunction WeightFunction::constant(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("constant weight must be positive and finite");
    }
    return WeightFunction(WeightKind::Constant, [eps](double) { return eps; }, eps);
}

WeightFunction WeightFunction::general(std::function<double(double)> phi) {
    if (!phi) throw std::invalid_argument("null weight function");
    return WeightFunction(WeightKind::General, std::move(phi), 0.0);
}

double WeightFunction::constant_value() const {
    if (kind_ != WeightKind::Constant) {
        throw std::logic_error("constant_value() called on a general weight");
    }
    return const_val_;
}

void validate_weight_on(const WeightFunction& phi, const Grid& grid, double mono_tol,
                        bool require_nondecreasing) {
    double prev = 0.0;
    for (int i = 0; i <= grid.n(); ++i) {
        const double t = grid.node(i);
        const double v = phi(t);
        if (!std::isfinite(v) || v <= 0.0) {
            std::ostringstream msg;
            msg << "weight must be positive and finite; got " << v << " at t=" << t;
            throw std::invalid_argument(msg.str());
        }
        if (require_nondecreasing && i > 0 && v < prev - mono_tol) {
            std::ostringstream msg;
            msg << "weight decreases between t=" << grid.node(i - 1) << " and t=" << t;
            throw std::invalid_argument(msg.str());
        }
        prev = v;
    }
}

void ToleranceConfig::validate() const {
    if (!(picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be positive");
    if (max_iter <= 0) throw std::invalid_argument("max_iter must be positive");
    if (mono_tol < 0.0) throw std::invalid_argument("mono_tol must be nonnegative");
    if (verify_slack < 0.0) throw std::invalid_argument("verify_slack must be nonnegative");
}

}  // namespace volterra
