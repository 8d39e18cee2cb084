#include "annular/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

namespace annular {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct FuncInfo {
    std::string_view name;
    Func func;
    bool variadic;
};

constexpr std::array<FuncInfo, 9> kFunctions{{
    {"exp", Func::exp, false},
    {"log", Func::log, false},
    {"sin", Func::sin, false},
    {"cos", Func::cos, false},
    {"atan", Func::atan, false},
    {"sqrt", Func::sqrt, false},
    {"abs", Func::abs, false},
    {"min", Func::min, true},
    {"max", Func::max, true},
}};

constexpr std::array<std::pair<std::string_view, Var>, 5> kVariables{{
    {"r", Var::r}, {"u", Var::u}, {"v", Var::v}, {"gu", Var::gu}, {"gv", Var::gv}}};

std::string_view func_name(Func f) {
    for (const auto& info : kFunctions) {
        if (info.func == f) return info.name;
    }
    return "?";
}

std::string_view var_name(Var var) {
    for (const auto& [name, v] : kVariables) {
        if (v == var) return name;
    }
    return "?";
}

std::string format_number(double x) {
    char buf[32];
    // Shortest of %.15g / %.17g that round-trips.
    std::snprintf(buf, sizeof buf, "%.15g", x);
    if (std::strtod(buf, nullptr) != x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
    }
    return buf;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr run() {
        skip_space();
        if (pos_ == src_.size()) {
            throw ParseError("empty expression", pos_);
        }
        Expr e = parse_sum();
        skip_space();
        if (pos_ != src_.size()) {
            throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    Expr parse_sum() {
        Expr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(BinaryOp::add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = Expr::binary(BinaryOp::sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_product() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(BinaryOp::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = Expr::binary(BinaryOp::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) {
            return Expr::negate(parse_unary());
        }
        if (accept('+')) {
            return parse_unary();
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) {
            // right-associative; exponent may carry a sign: 2^-1
            return Expr::binary(BinaryOp::pow, base, parse_unary());
        }
        return base;
    }

    Expr parse_primary() {
        skip_space();
        if (pos_ == src_.size()) {
            throw ParseError("unexpected end of expression", pos_);
        }
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value);
        if (ec != std::errc{} || ptr == src_.data() + pos_) {
            throw ParseError("malformed number", start);
        }
        pos_ = static_cast<std::size_t>(ptr - src_.data());
        if (!std::isfinite(value)) {
            throw ParseError("number out of range", start);
        }
        return Expr::number(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);

        for (const auto& info : kFunctions) {
            if (info.name != name) continue;
            if (!accept('(')) {
                throw ParseError("expected '(' after function " + std::string(name), pos_);
            }
            std::vector<Expr> args{parse_sum()};
            while (accept(',')) args.push_back(parse_sum());
            expect(')');
            if (!info.variadic && args.size() != 1) {
                throw ParseError(std::string(name) + " takes exactly one argument", start);
            }
            if (info.variadic && args.size() < 2) {
                throw ParseError(std::string(name) + " takes at least two arguments", start);
            }
            return Expr::call(info.func, args);
        }
        for (const auto& [vname, var] : kVariables) {
            if (vname == name) return Expr::variable(var);
        }
        if (name == "e" || name == "pi") {
            return Expr::constant(name);
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start, std::string(name));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

[[noreturn]] void fail(const char* what, const EvalPoint& p) {
    throw EvalError(what, p);
}

double eval_node(const Expr::Node& n, const EvalPoint& p) {
    using Kind = Expr::Node::Kind;
    double result = 0.0;
    switch (n.kind) {
        case Kind::number:
        case Kind::constant:
            return n.value;
        case Kind::variable:
            return p[n.var];
        case Kind::negate:
            return -eval_node(*n.args[0], p);
        case Kind::binary: {
            const double a = eval_node(*n.args[0], p);
            const double b = eval_node(*n.args[1], p);
            switch (n.op) {
                case BinaryOp::add: result = a + b; break;
                case BinaryOp::sub: result = a - b; break;
                case BinaryOp::mul: result = a * b; break;
                case BinaryOp::div:
                    if (b == 0.0) fail("division by zero", p);
                    result = a / b;
                    break;
                case BinaryOp::pow:
                    if (a < 0.0 && b != std::trunc(b)) {
                        fail("negative base with non-integer exponent", p);
                    }
                    if (a == 0.0 && b < 0.0) fail("division by zero (0 to a negative power)", p);
                    result = std::pow(a, b);
                    break;
            }
            break;
        }
        case Kind::call: {
            const double x = eval_node(*n.args[0], p);
            switch (n.func) {
                case Func::exp: result = std::exp(x); break;
                case Func::log:
                    if (x <= 0.0) fail("log of non-positive value", p);
                    result = std::log(x);
                    break;
                case Func::sin: result = std::sin(x); break;
                case Func::cos: result = std::cos(x); break;
                case Func::atan: result = std::atan(x); break;
                case Func::sqrt:
                    if (x < 0.0) fail("sqrt of negative value", p);
                    result = std::sqrt(x);
                    break;
                case Func::abs: result = std::abs(x); break;
                case Func::min:
                case Func::max:
                    result = x;
                    for (std::size_t k = 1; k < n.args.size(); ++k) {
                        const double y = eval_node(*n.args[k], p);
                        result = n.func == Func::min ? std::min(result, y) : std::max(result, y);
                    }
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(result)) {
        fail("non-finite result (overflow)", p);
    }
    return result;
}

// Precedence levels used by the printer.
constexpr int kSum = 1;
constexpr int kProduct = 2;
constexpr int kUnary = 3;
constexpr int kPower = 4;
constexpr int kAtom = 5;

int precedence(const Expr::Node& n) {
    using Kind = Expr::Node::Kind;
    switch (n.kind) {
        case Kind::negate: return kUnary;
        case Kind::binary:
            switch (n.op) {
                case BinaryOp::add:
                case BinaryOp::sub: return kSum;
                case BinaryOp::mul:
                case BinaryOp::div: return kProduct;
                case BinaryOp::pow: return kPower;
            }
            break;
        default: break;
    }
    return kAtom;
}

void print(const Expr::Node& n, std::string& out, int min_prec) {
    using Kind = Expr::Node::Kind;
    const int prec = precedence(n);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (n.kind) {
        case Kind::number: out += format_number(n.value); break;
        case Kind::constant: out += n.name; break;
        case Kind::variable: out += var_name(n.var); break;
        case Kind::negate:
            out += '-';
            print(*n.args[0], out, kUnary);
            break;
        case Kind::binary: {
            static constexpr std::array<const char*, 5> symbols{" + ", " - ", " * ", " / ", "^"};
            if (n.op == BinaryOp::pow) {
                print(*n.args[0], out, kAtom);
                out += symbols[static_cast<int>(n.op)];
                print(*n.args[1], out, kUnary);
            } else {
                print(*n.args[0], out, prec);
                out += symbols[static_cast<int>(n.op)];
                print(*n.args[1], out, prec + 1);
            }
            break;
        }
        case Kind::call:
            out += func_name(n.func);
            out += '(';
            for (std::size_t k = 0; k < n.args.size(); ++k) {
                if (k) out += ", ";
                print(*n.args[k], out, kSum);
            }
            out += ')';
            break;
    }
    if (parens) out += ')';
}

bool equal(const Expr::Node& a, const Expr::Node& b) {
    using Kind = Expr::Node::Kind;
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
        case Kind::number:
            if (a.value != b.value) return false;
            break;
        case Kind::constant:
            if (a.name != b.name) return false;
            break;
        case Kind::variable:
            if (a.var != b.var) return false;
            break;
        case Kind::binary:
            if (a.op != b.op) return false;
            break;
        case Kind::call:
            if (a.func != b.func) return false;
            break;
        case Kind::negate: break;
    }
    for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (!equal(*a.args[k], *b.args[k])) return false;
    }
    return true;
}

bool refs(const Expr::Node& n, Var var) {
    if (n.kind == Expr::Node::Kind::variable && n.var == var) return true;
    for (const auto& child : n.args) {
        if (refs(*child, var)) return true;
    }
    return false;
}

std::size_t count(const Expr::Node& n) {
    std::size_t total = 1;
    for (const auto& child : n.args) total += count(*child);
    return total;
}

}  // namespace

double EvalPoint::operator[](Var var) const {
    switch (var) {
        case Var::r: return r;
        case Var::u: return u;
        case Var::v: return v;
        case Var::gu: return gu;
        case Var::gv: return gv;
    }
    return 0.0;
}

double& EvalPoint::operator[](Var var) {
    switch (var) {
        case Var::r: return r;
        case Var::u: return u;
        case Var::v: return v;
        case Var::gu: return gu;
        case Var::gv: break;
    }
    return gv;
}

std::string to_string(const EvalPoint& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "(r=%.9g, u=%.9g, v=%.9g, gu=%.9g, gv=%.9g)", p.r, p.u, p.v,
                  p.gu, p.gv);
    return buf;
}

ParseError::ParseError(const std::string& message, std::size_t position, std::string token)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position),
      token_(std::move(token)) {}

EvalError::EvalError(const std::string& message, const EvalPoint& point)
    : std::runtime_error(message + " at " + annular::to_string(point)), point_(point) {}

Expr Expr::number(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::constant(std::string_view name) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::constant;
    n->name = std::string(name);
    if (name == "e") {
        n->value = std::numbers::e;
    } else if (name == "pi") {
        n->value = std::numbers::pi;
    } else {
        throw std::invalid_argument("unknown constant " + std::string(name));
    }
    return Expr(std::move(n));
}

Expr Expr::variable(Var var) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::variable;
    n->var = var;
    return Expr(std::move(n));
}

Expr Expr::negate(const Expr& operand) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::negate;
    n->args = {operand.root_};
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, const Expr& lhs, const Expr& rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->args = {lhs.root_, rhs.root_};
    return Expr(std::move(n));
}

Expr Expr::call(Func func, const std::vector<Expr>& args) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->func = func;
    for (const auto& a : args) n->args.push_back(a.root_);
    return Expr(std::move(n));
}

double Expr::eval(const EvalPoint& point) const {
    return eval_node(*root_, point);
}

bool Expr::references(Var var) const {
    return refs(*root_, var);
}

std::size_t Expr::node_count() const {
    return count(*root_);
}

std::string Expr::to_string() const {
    std::string out;
    print(*root_, out, kSum);
    return out;
}

bool Expr::structurally_equal(const Expr& other) const {
    return equal(*root_, *other.root_);
}

Expr parse(std::string_view source) {
    return Parser(source).run();
}

double evaluate_constant(std::string_view source) {
    const Expr e = parse(source);
    for (Var var : {Var::r, Var::u, Var::v, Var::gu, Var::gv}) {
        if (e.references(var)) {
            throw ParseError("constant expression may not reference variables", 0);
        }
    }
    return e.eval(EvalPoint{});
}

}  // namespace annular
