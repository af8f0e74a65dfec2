#include "volterra/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "volterra/cli/registry.hpp"
#include "volterra/stability.hpp"

namespace volterra::cli {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

double to_double(const std::string& v, const std::string& where) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double parsed = std::strtod(begin, &end);
    if (end == begin || *end != '\0') bad(where, "expected a number, got \"" + v + "\"");
    return parsed;
}

int to_int(const std::string& v, const std::string& where) {
    const double d = to_double(v, where);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) bad(where, "expected an integer, got \"" + v + "\"");
    return i;
}

std::uint64_t to_u64(const std::string& v, const std::string& where) {
    const double d = to_double(v, where);
    if (d < 0 || static_cast<double>(static_cast<std::uint64_t>(d)) != d) {
        bad(where, "expected a nonnegative integer, got \"" + v + "\"");
    }
    return static_cast<std::uint64_t>(d);
}

// Single dispatch point shared by the key=value and JSON loaders.
void apply_kv(RunConfig& cfg, const std::string& section, const std::string& key,
              const std::string& value, const std::string& where) {
    if (section == "problem") {
        if (key == "kernel") cfg.kernel = value;
        else if (key == "kernel_expression") cfg.kernel_expression = value;
        else if (key == "t0") cfg.t0 = to_double(value, where);
        else if (key == "r") cfg.r = to_double(value, where);
        else if (key == "n") cfg.n = to_int(value, where);
        else if (key == "lipschitz") {
            if (value == "estimate") cfg.lipschitz_estimate = true;
            else cfg.lipschitz = to_double(value, where);
        } else if (key == "y_lo") cfg.y_lo = to_double(value, where);
        else if (key == "y_hi") cfg.y_hi = to_double(value, where);
        else if (key == "lipschitz_samples") cfg.lipschitz_samples = to_int(value, where);
        else bad(where, "unknown key '" + key + "' in [problem]");
    } else if (section == "weight") {
        if (key == "kind") cfg.weight.kind = value;
        else if (key == "epsilon") cfg.weight.epsilon = to_double(value, where);
        else if (key == "expression") cfg.weight.expression = value;
        else bad(where, "unknown key '" + key + "' in [weight]");
    } else if (section == "eta") {
        if (key == "value") cfg.eta = value;
        else bad(where, "unknown key '" + key + "' in [eta]");
    } else if (section == "tolerances") {
        if (key == "picard_tol") cfg.tol.picard_tol = to_double(value, where);
        else if (key == "max_iter") cfg.tol.max_iter = to_int(value, where);
        else if (key == "quadrature") {
            if (value == "trapezoid") cfg.tol.quad_order = QuadKind::Trapezoid;
            else if (value == "simpson") cfg.tol.quad_order = QuadKind::Simpson;
            else bad(where, "quadrature must be 'trapezoid' or 'simpson'");
        } else if (key == "mono_tol") cfg.tol.mono_tol = to_double(value, where);
        else if (key == "verify_slack") cfg.tol.verify_slack = to_double(value, where);
        else bad(where, "unknown key '" + key + "' in [tolerances]");
    } else if (section == "perturbation") {
        if (key == "kind") cfg.perturb.kind = value;
        else if (key == "magnitude") cfg.perturb.magnitude = to_double(value, where);
        else if (key == "seed") cfg.seed = to_u64(value, where);
        else bad(where, "unknown key '" + key + "' in [perturbation]");
    } else if (section == "output") {
        if (key == "path") cfg.output.path = value;
        else if (key == "format") cfg.output.format = value;
        else bad(where, "unknown key '" + key + "' in [output]");
    } else {
        bad(where, "unknown section [" + section + "]");
    }
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = strip(line);
        if (line.empty()) continue;

        std::ostringstream where;
        where << "config line " << lineno;
        if (line.front() == '[') {
            if (line.back() != ']') bad(where.str(), "unterminated section header");
            section = strip(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) bad(where.str(), "expected 'key = value'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) bad(where.str(), "missing key before '='");
        if (section.empty()) bad(where.str(), "key '" + key + "' appears before any [section]");
        where << ", field " << section << "." << key;
        apply_kv(cfg, section, key, value, where.str());
    }
    return cfg;
}

RunConfig parse_config_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config JSON root must be an object");

    RunConfig cfg;
    for (const auto& [section, body] : doc.items()) {
        if (!body.is_object()) {
            bad("config section '" + section + "'", "must be an object of key/value pairs");
        }
        for (const auto& [key, value] : body.items()) {
            const std::string where = "config field " + section + "." + key;
            std::string text_value;
            if (value.is_string()) text_value = value.get<std::string>();
            else if (value.is_boolean()) text_value = value.get<bool>() ? "true" : "false";
            else if (value.is_number()) text_value = value.dump();
            else bad(where, "unsupported value type");
            apply_kv(cfg, section, key, text_value, where);
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (format == "json") return parse_config_json(buf.str());
    if (format == "ini") return parse_config_text(buf.str());
    throw ConfigError("unknown config format '" + format + "' (expected ini or json)");
}

ResolvedSetup resolve(const RunConfig& cfg) {
    const bool has_name = !cfg.kernel.empty();
    const bool has_expr = !cfg.kernel_expression.empty();
    if (has_name == has_expr) {
        throw ConfigError("specify exactly one of problem.kernel / problem.kernel_expression");
    }

    std::optional<KernelForm> kernel;
    double def_t0 = 0.0;
    double def_r = 1.0;
    std::optional<double> def_lipschitz;
    if (has_name) {
        auto entry = find_kernel(cfg.kernel);
        if (!entry) {
            std::ostringstream msg;
            msg << "unknown kernel '" << cfg.kernel << "'; built-ins:";
            for (const auto& e : kernel_registry()) msg << " " << e.name;
            throw ConfigError(msg.str());
        }
        kernel = entry->kernel;
        def_t0 = entry->t0;
        def_r = entry->r;
        def_lipschitz = entry->lipschitz;
    } else {
        Expression ex = parse_expression(cfg.kernel_expression);
        if (ex.uses_t) {
            kernel = KernelForm::bivariate(ex.fn);
        } else {
            kernel = KernelForm::state_only(
                [fn = ex.fn](double s, double y) { return fn(s, s, y); });
        }
    }

    const double t0 = cfg.t0.value_or(def_t0);
    const double r = cfg.r.value_or(def_r);
    const int n = cfg.n.value_or(1000);
    std::optional<Grid> grid;
    try {
        grid = make_grid(t0, r, n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("problem interval: ") + e.what());
    }

    if (cfg.lipschitz && cfg.lipschitz_estimate) {
        throw ConfigError("problem.lipschitz: declare a value or 'estimate', not both");
    }
    double lipschitz = 0.0;
    bool estimated = false;
    if (cfg.lipschitz) {
        lipschitz = *cfg.lipschitz;
    } else if (cfg.lipschitz_estimate) {
        if (!cfg.y_lo || !cfg.y_hi) {
            throw ConfigError("lipschitz = estimate requires problem.y_lo and problem.y_hi");
        }
        lipschitz = estimate_lipschitz(*kernel, *grid, *cfg.y_lo, *cfg.y_hi,
                                       cfg.lipschitz_samples, cfg.seed);
        estimated = true;
        if (!(lipschitz > 0.0)) {
            throw ConfigError("estimated Lipschitz constant is zero; declare one explicitly");
        }
    } else if (def_lipschitz) {
        lipschitz = *def_lipschitz;
    } else {
        throw ConfigError("problem.lipschitz is required (a number or 'estimate')");
    }

    std::optional<WeightFunction> weight;
    if (cfg.weight.kind == "constant") {
        if (!(cfg.weight.epsilon > 0.0)) throw ConfigError("weight.epsilon must be positive");
        weight = WeightFunction::constant(cfg.weight.epsilon);
    } else if (cfg.weight.kind == "expression") {
        if (cfg.weight.expression.empty()) {
            throw ConfigError("weight.kind = expression requires weight.expression");
        }
        Expression ex = parse_expression(cfg.weight.expression);
        if (ex.uses_s || ex.uses_y) {
            throw ConfigError("weight.expression may only use the variable t");
        }
        weight = WeightFunction::general([fn = ex.fn](double t) { return fn(t, 0.0, 0.0); });
        try {
            validate_weight_on(*weight, *grid, cfg.tol.mono_tol, /*require_nondecreasing=*/true);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("weight.expression: ") + e.what());
        }
    } else {
        throw ConfigError("weight.kind must be 'constant' or 'expression'");
    }

    double eta = 0.0;
    if (cfg.eta == "optimal") {
        eta = optimal_eta(lipschitz, r);
    } else {
        eta = to_double(cfg.eta, "eta.value");
        if (!(eta > lipschitz)) {
            std::ostringstream msg;
            msg << "eta.value = " << eta << " must exceed L = " << lipschitz;
            throw ConfigError(msg.str());
        }
    }

    try {
        cfg.tol.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("tolerances: ") + e.what());
    }

    return ResolvedSetup{Problem(std::move(*kernel), std::move(*grid), lipschitz),
                         std::move(*weight), eta, estimated};
}

}  // namespace volterra::cli
