#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace annular {

/// Variables a nonlinearity may reference: radius, the two states and the
/// gradient magnitudes |grad u|, |grad v|.
enum class Var { r, u, v, gu, gv };

enum class BinaryOp { add, sub, mul, div, pow };

enum class Func { exp, log, sin, cos, atan, sqrt, abs, min, max };

struct EvalPoint {
    double r = 0.0;
    double u = 0.0;
    double v = 0.0;
    double gu = 0.0;
    double gv = 0.0;

    double operator[](Var var) const;
    double& operator[](Var var);
    bool operator==(const EvalPoint&) const = default;
};

std::string to_string(const EvalPoint& point);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position, std::string token = {});

    std::size_t position() const { return position_; }
    /// Offending token for unknown identifiers, empty otherwise.
    const std::string& token() const { return token_; }

private:
    std::size_t position_;
    std::string token_;
};

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, const EvalPoint& point);

    const EvalPoint& point() const { return point_; }

private:
    EvalPoint point_;
};

/// Immutable expression tree. Copies share the tree.
class Expr {
public:
    struct Node {
        enum class Kind { number, constant, variable, negate, binary, call };

        Kind kind;
        double value = 0.0;  // number, constant
        std::string name;    // constant
        Var var = Var::r;
        BinaryOp op = BinaryOp::add;
        Func func = Func::exp;
        std::vector<std::shared_ptr<const Node>> args;
    };

    static Expr number(double value);
    static Expr constant(std::string_view name);  // "e" or "pi"
    static Expr variable(Var var);
    static Expr negate(const Expr& operand);
    static Expr binary(BinaryOp op, const Expr& lhs, const Expr& rhs);
    static Expr call(Func func, const std::vector<Expr>& args);

    const Node& root() const { return *root_; }

    /// Throws EvalError on division by zero, log/sqrt outside the domain,
    /// negative base with non-integer exponent, and any non-finite result.
    double eval(const EvalPoint& point) const;
    double eval(double r, double u, double v, double gu, double gv) const {
        return eval(EvalPoint{r, u, v, gu, gv});
    }

    bool references(Var var) const;
    std::size_t node_count() const;

    /// Minimal-parenthesis rendering that parses back to the same tree.
    std::string to_string() const;

    bool structurally_equal(const Expr& other) const;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

/// Recursive-descent parser. Precedence from loosest: + -, * /, unary -, ^
/// (right-associative). Throws ParseError.
Expr parse(std::string_view source);

/// Parses an expression without variables (e.g. "e", "1/4") and evaluates it.
double evaluate_constant(std::string_view source);

}  // namespace annular
