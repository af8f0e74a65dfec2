#include "volterra/cli/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace volterra::cli {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Expression run() {
        Fn root = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        if (!root) fail("empty expression");
        return Expression{std::move(root), uses_t_, uses_s_, uses_y_};
    }

private:
    using Fn = std::function<double(double, double, double)>;

    Fn parse_expr() {
        Fn lhs = parse_term();
        for (;;) {
            skip_ws();
            if (consume('+')) {
                Fn rhs = parse_term();
                Fn sum = [l = std::move(lhs), r = std::move(rhs)](double t, double s, double y) {
                    return l(t, s, y) + r(t, s, y);
                };
                lhs = std::move(sum);
            } else if (consume('-')) {
                Fn rhs = parse_term();
                Fn diff = [l = std::move(lhs), r = std::move(rhs)](double t, double s, double y) {
                    return l(t, s, y) - r(t, s, y);
                };
                lhs = std::move(diff);
            } else {
                return lhs;
            }
        }
    }

    Fn parse_term() {
        Fn lhs = parse_factor();
        for (;;) {
            skip_ws();
            if (consume('*')) {
                Fn rhs = parse_factor();
                Fn prod = [l = std::move(lhs), r = std::move(rhs)](double t, double s, double y) {
                    return l(t, s, y) * r(t, s, y);
                };
                lhs = std::move(prod);
            } else {
                return lhs;
            }
        }
    }

    Fn parse_factor() {
        skip_ws();
        if (consume('-')) {
            Fn inner = parse_factor();
            return [f = std::move(inner)](double t, double s, double y) { return -f(t, s, y); };
        }
        return parse_primary();
    }

    Fn parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a value");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            return [v](double, double, double) { return v; };
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string ident;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
                ident += text_[pos_++];
            }
            if (ident == "t") {
                uses_t_ = true;
                return [](double t, double, double) { return t; };
            }
            if (ident == "s") {
                uses_s_ = true;
                return [](double, double s, double) { return s; };
            }
            if (ident == "y") {
                uses_y_ = true;
                return [](double, double, double y) { return y; };
            }
            if (ident == "exp" || ident == "sin") {
                skip_ws();
                if (!consume('(')) fail("expected '(' after " + ident);
                Fn arg = parse_expr();
                skip_ws();
                if (!consume(')')) fail("expected ')'");
                if (ident == "exp") {
                    return [f = std::move(arg)](double t, double s, double y) {
                        return std::exp(f(t, s, y));
                    };
                }
                return [f = std::move(arg)](double t, double s, double y) {
                    return std::sin(f(t, s, y));
                };
            }
            fail("unknown identifier '" + ident + "' (allowed: t, s, y, exp, sin)");
        }
        if (consume('(')) {
            Fn inner = parse_expr();
            skip_ws();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
        return {};
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream msg;
        msg << "expression error at position " << pos_ << " in \"" << text_ << "\": " << what;
        throw ConfigError(msg.str());
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    bool uses_t_ = false;
    bool uses_s_ = false;
    bool uses_y_ = false;
};

}  // namespace

Expression parse_expression(const std::string& text) { return Parser(text).run(); }

}  // namespace volterra::cli
