#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace volterra::cli {

/// Configuration or expression problem; rendered to the user with exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed arithmetic expression over the variables t, s, y with +, -, *,
/// numeric constants, exp and sin. No division and no general code, so config
/// files stay reproducible and safe to share.
struct Expression {
    std::function<double(double t, double s, double y)> fn;
    bool uses_t = false;
    bool uses_s = false;
    bool uses_y = false;
};

/// Recursive-descent parse of the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | primary
///   primary:= number | t | s | y | exp '(' expr ')' | sin '(' expr ')' | '(' expr ')'
/// Throws ConfigError with the offending position on malformed input.
Expression parse_expression(const std::string& text);

}  // namespace volterra::cli
