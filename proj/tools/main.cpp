#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "volterra/cli/commands.hpp"

namespace {

using namespace volterra;
using namespace volterra::cli;

struct Overrides {
    std::string config;
    std::string config_format = "ini";
    std::optional<int> n;
    std::optional<std::string> eta;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> kernel;
    std::optional<std::string> kernel_expr;
    std::optional<double> t0;
    std::optional<double> r;
    std::optional<double> lipschitz;
    std::optional<double> epsilon;
    std::optional<std::string> phi;
    std::optional<std::string> perturb;
    std::optional<double> magnitude;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "config file with [section] key = value entries");
    cmd->add_option("--config-format", o.config_format, "config file format: ini or json")
        ->check(CLI::IsMember({"ini", "json"}));
    cmd->add_option("--n", o.n, "number of grid subintervals");
    cmd->add_option("--eta", o.eta, "metric exponent: 'optimal' or a number > L");
    cmd->add_option("--format", o.format, "solve artifact format: csv or json");
    cmd->add_option("--out", o.out, "output path (directory for reproduce); default stdout");
    cmd->add_option("--seed", o.seed, "seed for all randomized steps");
    cmd->add_option("--kernel", o.kernel, "built-in kernel name");
    cmd->add_option("--kernel-expr", o.kernel_expr, "kernel expression over (t, s, y)");
    cmd->add_option("--t0", o.t0, "interval left endpoint");
    cmd->add_option("--r", o.r, "interval length");
    cmd->add_option("--lipschitz", o.lipschitz, "declared Lipschitz constant");
    cmd->add_option("--epsilon", o.epsilon, "constant defect weight");
    cmd->add_option("--phi", o.phi, "weight expression over t, e.g. exp(t)");
    cmd->add_option("--perturb", o.perturb,
                    "perturbation kind: constant-defect, scaled-shape, random-smooth");
    cmd->add_option("--magnitude", o.magnitude, "perturbation magnitude");
}

RunConfig build_config(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config, o.config_format);
    if (o.n) cfg.n = *o.n;
    if (o.eta) cfg.eta = *o.eta;
    if (o.format) cfg.output.format = *o.format;
    if (o.out) cfg.output.path = *o.out;
    if (o.seed) cfg.seed = *o.seed;
    if (o.kernel) {
        cfg.kernel = *o.kernel;
        cfg.kernel_expression.clear();
    }
    if (o.kernel_expr) {
        cfg.kernel_expression = *o.kernel_expr;
        cfg.kernel.clear();
    }
    if (o.t0) cfg.t0 = *o.t0;
    if (o.r) cfg.r = *o.r;
    if (o.lipschitz) {
        cfg.lipschitz = *o.lipschitz;
        cfg.lipschitz_estimate = false;
    }
    if (o.epsilon) {
        cfg.weight.kind = "constant";
        cfg.weight.epsilon = *o.epsilon;
    }
    if (o.phi) {
        cfg.weight.kind = "expression";
        cfg.weight.expression = *o.phi;
    }
    if (o.perturb) cfg.perturb.kind = *o.perturb;
    if (o.magnitude) cfg.perturb.magnitude = *o.magnitude;
    return cfg;
}

template <typename Fn>
int run_guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const GenerationError& e) {
        std::cerr << "generation error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second-kind Volterra equations: Picard solver, Hyers-Ulam and "
                 "Hyers-Ulam-Rassias stability certificates, and empirical verification"};
    app.require_subcommand(1);

    Overrides solve_opts, certify_opts, verify_opts, repro_opts;
    CLI::App* solve = app.add_subcommand("solve", "solve and cross-check the configured problem");
    add_common_options(solve, solve_opts);
    CLI::App* certify = app.add_subcommand("certify", "emit the stability certificate artifact");
    add_common_options(certify, certify_opts);
    CLI::App* verify = app.add_subcommand("verify", "perturb, solve and check the bound");
    add_common_options(verify, verify_opts);
    CLI::App* repro = app.add_subcommand("reproduce", "rerun the built-in demonstrations");
    std::string which = "all";
    repro->add_option("which", which, "example-3-1, example-3-2 or all")
        ->check(CLI::IsMember({"example-3-1", "example-3-2", "all"}));
    add_common_options(repro, repro_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (solve->parsed()) {
        return run_guarded([&] { return cmd_solve(build_config(solve_opts)); });
    }
    if (certify->parsed()) {
        return run_guarded([&] { return cmd_certify(build_config(certify_opts)); });
    }
    if (verify->parsed()) {
        return run_guarded([&] { return cmd_verify(build_config(verify_opts)); });
    }
    return run_guarded([&] { return cmd_reproduce(which, build_config(repro_opts)); });
}
