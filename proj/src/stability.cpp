#include "volterra/stability.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite, got " << v;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

double bound_factor(double lipschitz, double r, double eta) {
    require_positive(lipschitz, "lipschitz");
    require_positive(r, "r");
    if (!(eta > lipschitz)) {
        std::ostringstream msg;
        msg << "bound factor requires eta > L (got eta=" << eta << ", L=" << lipschitz << ")";
        throw std::invalid_argument(msg.str());
    }
    return std::exp(eta * r) / (1.0 - lipschitz / eta);
}

double optimal_eta(double lipschitz, double r) {
    require_positive(lipschitz, "lipschitz");
    require_positive(r, "r");
    const double L = lipschitz;
    return (L + std::sqrt(L * L + 4.0 * L / r)) / 2.0;
}

Certificate::Certificate(double eta, double lipschitz, double r, StabilityForm form,
                         WeightFunction weight)
    : eta_(eta),
      lipschitz_(lipschitz),
      r_(r),
      factor_(bound_factor(lipschitz, r, eta)),  // enforces eta > L
      form_(form),
      weight_(std::move(weight)) {}

double Certificate::epsilon() const {
    if (form_ != StabilityForm::HyersUlam) {
        throw std::logic_error("epsilon() is only defined for Hyers-Ulam certificates");
    }
    return weight_.constant_value();
}

ScalarField Certificate::bound_on(const Grid& grid) const {
    return sample_function([this](double t) { return factor_ * weight_(t); }, grid);
}

Certificate hur_bound(const WeightFunction& phi, double lipschitz, const Grid& grid,
                      double eta, double mono_tol) {
    if (!(eta > lipschitz)) {
        std::ostringstream msg;
        msg << "the stability bound needs eta > L; eta=" << eta << " does not exceed L="
            << lipschitz;
        throw std::invalid_argument(msg.str());
    }
    validate_weight_on(phi, grid, mono_tol, /*require_nondecreasing=*/true);
    return Certificate(eta, lipschitz, grid.r(), StabilityForm::HyersUlamRassias, phi);
}

Certificate hu_bound(double eps, double lipschitz, double r, double eta) {
    require_positive(eps, "eps");
    if (!(eta > lipschitz)) {
        std::ostringstream msg;
        msg << "the stability bound needs eta > L; eta=" << eta << " does not exceed L="
            << lipschitz;
        throw std::invalid_argument(msg.str());
    }
    return Certificate(eta, lipschitz, r, StabilityForm::HyersUlam,
                       WeightFunction::constant(eps));
}

double minimal_K(const WeightFunction& phi, const Grid& grid) {
    validate_weight_on(phi, grid, 0.0, /*require_nondecreasing=*/false);
    ScalarField phi_field = sample_function([&phi](double t) { return phi(t); }, grid);
    ScalarField cum = cumulative_integral(phi_field);
    double k = 0.0;
    for (int i = 0; i <= grid.n(); ++i) {
        k = std::max(k, cum[i] / phi_field[i]);
    }
    return k;
}

ClassicReport check_classic_conditions(double lipschitz, const Grid& grid,
                                       const std::optional<WeightFunction>& phi) {
    require_positive(lipschitz, "lipschitz");
    ClassicReport report;
    report.lr_product = lipschitz * grid.r();
    report.hu_applicable = report.lr_product < 1.0;
    if (phi) {
        const double k = minimal_K(*phi, grid);
        report.k_min = k;
        report.kl_product = k * lipschitz;
        report.hur_applicable = *report.kl_product < 1.0;
    }
    return report;
}

double estimate_lipschitz(const KernelForm& kernel, const Grid& grid, double y_lo,
                          double y_hi, int samples, std::uint64_t seed) {
    if (!(y_lo < y_hi)) throw std::invalid_argument("state box requires y_lo < y_hi");
    if (samples < 2) throw std::invalid_argument("need at least 2 samples");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> node(0, grid.n());
    std::uniform_real_distribution<double> state(y_lo, y_hi);

    double best = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double s = grid.node(node(rng));
        const double t = kernel.kind() == KernelKind::Bivariate ? grid.node(node(rng)) : s;
        const double y1 = state(rng);
        double y2 = state(rng);
        while (y2 == y1) y2 = state(rng);
        const double quotient =
            std::abs(kernel.eval(t, s, y1) - kernel.eval(t, s, y2)) / std::abs(y1 - y2);
        if (std::isfinite(quotient)) best = std::max(best, quotient);
    }
    return best;
}

}  // namespace volterra
