#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "volterra/cli/expression.hpp"
#include "volterra/core.hpp"

namespace volterra::cli {

struct WeightSpec {
    std::string kind = "constant";  ///< "constant" | "expression"
    double epsilon = 1.0;
    std::string expression;  ///< phi(t) over the grammar, e.g. "exp(t)"
};

struct PerturbSpec {
    std::string kind = "scaled-shape";  ///< "constant-defect" | "scaled-shape" | "random-smooth"
    double magnitude = 0.01;
};

struct OutputSpec {
    std::string path;            ///< empty = stdout (solve/certify/verify) or cwd (reproduce)
    std::string format = "csv";  ///< "csv" | "json", solve artifact only
};

/// Everything a run needs, from a key = value config file, a JSON config, or
/// command-line overrides. Exactly one of kernel / kernel_expression and
/// exactly one of a declared or estimated Lipschitz constant.
struct RunConfig {
    std::string kernel;             ///< registry name
    std::string kernel_expression;  ///< expression over (t, s, y)
    std::optional<double> t0;
    std::optional<double> r;
    std::optional<int> n;
    std::optional<double> lipschitz;
    bool lipschitz_estimate = false;
    std::optional<double> y_lo;  ///< state box for estimation
    std::optional<double> y_hi;
    int lipschitz_samples = 4096;

    WeightSpec weight;
    std::string eta = "optimal";  ///< "optimal" or a decimal number
    ToleranceConfig tol;
    PerturbSpec perturb;
    OutputSpec output;
    std::uint64_t seed = 0;
};

/// Parses the flat `[section]` / `key = value` format. Lines starting with
/// '#' or ';' are comments. Throws ConfigError naming line and field.
RunConfig parse_config_text(const std::string& text);

/// JSON alternative with the same sections as nested objects.
RunConfig parse_config_json(const std::string& text);

/// Reads a config file; format is "ini" or "json".
RunConfig load_config(const std::string& path, const std::string& format);

/// A run setup after resolution: validated problem, weight, and eta.
struct ResolvedSetup {
    Problem problem;
    WeightFunction weight;
    double eta;
    bool lipschitz_estimated;
};

/// Builds the problem from the config: registry or expression kernel, grid,
/// declared or estimated L, weight, and eta ("optimal" resolves to the factor
/// minimizer; an explicit eta must exceed L). Throws ConfigError on any
/// inconsistency.
ResolvedSetup resolve(const RunConfig& cfg);

}  // namespace volterra::cli
