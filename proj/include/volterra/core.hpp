#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace volterra {

/// Raised when a function or kernel evaluates to a non-finite value, or an
/// inner scalar solve fails to converge. The message names the offending node.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a perturbation cannot be rescaled to meet its defect target.
struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform partition of the interval I = [t0, t0 + r] into n subintervals.
///
/// Nodes are t_i = t0 + i*r/n with the right endpoint pinned to t0 + r
/// exactly. Immutable after construction.
class Grid {
public:
    Grid(double t0, double r, int n);

    double t0() const { return t0_; }
    double r() const { return r_; }
    int n() const { return n_; }
    double spacing() const { return r_ / n_; }

    std::span<const double> nodes() const { return nodes_; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

    /// Grids compare equal when they describe the same partition.
    bool operator==(const Grid& other) const {
        return t0_ == other.t0_ && r_ == other.r_ && n_ == other.n_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    double t0_;
    double r_;
    int n_;
    std::vector<double> nodes_;
};

/// Validating factory for Grid. Throws std::invalid_argument on r <= 0 or n < 2.
Grid make_grid(double t0, double r, int n);

/// Real-valued samples on a Grid, one value per node. Values must be finite.
class ScalarField {
public:
    ScalarField(Grid grid, std::vector<double> values);

    static ScalarField zeros(const Grid& grid);
    static ScalarField constant(const Grid& grid, double value);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

    /// Number of samples, grid.n() + 1.
    int size() const { return static_cast<int>(values_.size()); }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Pointwise sampling of h on the grid nodes.
/// Throws NumericError naming the node if h evaluates non-finite.
ScalarField sample_function(const std::function<double(double)>& h, const Grid& grid);

double max_abs(const ScalarField& f);
double max_abs_diff(const ScalarField& a, const ScalarField& b);

enum class KernelKind { StateOnly, Bivariate };

/// Kernel of a second-kind Volterra equation y(t) = integral of f over [t0, t].
///
/// StateOnly kernels have signature f(s, y); Bivariate kernels f(t, s, y)
/// where t is the outer evaluation point of the running integral.
class KernelForm {
public:
    using StateOnlyFn = std::function<double(double s, double y)>;
    using BivariateFn = std::function<double(double t, double s, double y)>;

    static KernelForm state_only(StateOnlyFn f);
    static KernelForm bivariate(BivariateFn f);

    KernelKind kind() const { return kind_; }

    /// Evaluates the kernel; StateOnly kernels ignore t.
    double eval(double t, double s, double y) const { return fn_(t, s, y); }

private:
    KernelForm(KernelKind kind, BivariateFn fn) : kind_(kind), fn_(std::move(fn)) {}

    KernelKind kind_;
    BivariateFn fn_;
};

/// A Volterra problem: kernel, interval grid, and Lipschitz constant of the
/// kernel in its state argument.
class Problem {
public:
    Problem(KernelForm kernel, Grid grid, double lipschitz);

    const KernelForm& kernel() const { return kernel_; }
    const Grid& grid() const { return grid_; }
    double lipschitz() const { return lipschitz_; }

private:
    KernelForm kernel_;
    Grid grid_;
    double lipschitz_;
};

enum class WeightKind { Constant, General };

/// Positive nondecreasing weight phi used both as the admissible-defect bound
/// and inside the Bielecki metric. Constant weights represent the plain
/// Hyers-Ulam tolerance epsilon.
class WeightFunction {
public:
    static WeightFunction constant(double eps);
    static WeightFunction general(std::function<double(double)> phi);

    WeightKind kind() const { return kind_; }
    bool is_constant() const { return kind_ == WeightKind::Constant; }

    /// Constant value; throws std::logic_error for general weights.
    double constant_value() const;

    double operator()(double t) const { return fn_(t); }

private:
    WeightFunction(WeightKind kind, std::function<double(double)> fn, double cval)
        : kind_(kind), fn_(std::move(fn)), const_val_(cval) {}

    WeightKind kind_;
    std::function<double(double)> fn_;
    double const_val_;
};

/// Checks phi > 0 at all nodes, and (when require_nondecreasing) the sampled
/// monotonicity phi(t_{i+1}) >= phi(t_i) - mono_tol. Continuous verification
/// is impossible; node sampling is the testable surrogate.
void validate_weight_on(const WeightFunction& phi, const Grid& grid, double mono_tol,
                        bool require_nondecreasing);

enum class QuadKind { Trapezoid, Simpson };

/// Shared numeric knobs. All tolerances strictly positive except the
/// nonnegative mono_tol and verify_slack.
struct ToleranceConfig {
    double picard_tol = 1e-12;
    int max_iter = 200;
    QuadKind quad_order = QuadKind::Trapezoid;
    double mono_tol = 1e-12;
    double verify_slack = 1e-8;

    void validate() const;
};

}  // namespace volterra
