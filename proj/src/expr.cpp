#include "hsconvex/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

namespace hsconvex {

namespace {

ExprHandle node(ExprOp op, ExprHandle a = nullptr, ExprHandle b = nullptr) {
    return std::make_shared<ExprNode>(ExprNode{op, 0.0, std::move(a), std::move(b)});
}

ExprHandle const_node(double v) {
    return std::make_shared<ExprNode>(ExprNode{ExprOp::Constant, v, nullptr, nullptr});
}

bool is_const(const ExprHandle& n, double v) {
    return n->op == ExprOp::Constant && n->value == v;
}

double eval_node(const ExprNode& n, double x);

// Folds a node whose operands are all constants, when evaluation succeeds
// and yields a finite value; otherwise keeps the node so the error shows up
// at evaluation time.
ExprHandle fold(ExprHandle n) {
    if (n->op == ExprOp::Constant || n->op == ExprOp::Variable) return n;
    if (n->a && n->a->op != ExprOp::Constant) return n;
    if (n->b && n->b->op != ExprOp::Constant) return n;
    try {
        double v = eval_node(*n, 0.0);
        if (std::isfinite(v)) return const_node(v);
    } catch (const EvalError&) {
    }
    return n;
}

// Simplifying constructors used when building derivatives. They apply only
// identities that preserve evaluation on the original expression's domain;
// parsed input is never rewritten beyond constant folding.
ExprHandle mk_add(ExprHandle a, ExprHandle b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return fold(node(ExprOp::Add, std::move(a), std::move(b)));
}

ExprHandle mk_neg(ExprHandle a) {
    if (a->op == ExprOp::Constant) return const_node(-a->value);
    if (a->op == ExprOp::Neg) return a->a;
    return node(ExprOp::Neg, std::move(a));
}

ExprHandle mk_sub(ExprHandle a, ExprHandle b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return mk_neg(std::move(b));
    return fold(node(ExprOp::Sub, std::move(a), std::move(b)));
}

ExprHandle mk_mul(ExprHandle a, ExprHandle b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return const_node(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return fold(node(ExprOp::Mul, std::move(a), std::move(b)));
}

ExprHandle mk_div(ExprHandle a, ExprHandle b) {
    if (is_const(b, 1.0)) return a;
    return fold(node(ExprOp::Div, std::move(a), std::move(b)));
}

ExprHandle mk_pow(ExprHandle base, double expo) {
    if (expo == 1.0) return base;
    if (expo == 0.0) return const_node(1.0);
    return fold(node(ExprOp::Pow, std::move(base), const_node(expo)));
}

ExprHandle mk_fn(ExprOp op, ExprHandle a) { return fold(node(op, std::move(a))); }

double eval_node(const ExprNode& n, double x) {
    auto finite = [x](double v) {
        if (!std::isfinite(v))
            throw EvalError(EvalError::Kind::NonFinite, x, "non-finite intermediate value");
        return v;
    };
    switch (n.op) {
        case ExprOp::Constant: return n.value;
        case ExprOp::Variable: return finite(x);
        case ExprOp::Add: return finite(eval_node(*n.a, x) + eval_node(*n.b, x));
        case ExprOp::Sub: return finite(eval_node(*n.a, x) - eval_node(*n.b, x));
        case ExprOp::Mul: return finite(eval_node(*n.a, x) * eval_node(*n.b, x));
        case ExprOp::Div: {
            double num = eval_node(*n.a, x), den = eval_node(*n.b, x);
            if (den == 0.0)
                throw EvalError(EvalError::Kind::DomainViolation, x, "division by zero");
            return finite(num / den);
        }
        case ExprOp::Pow: {
            double base = eval_node(*n.a, x), expo = eval_node(*n.b, x);
            if (base == 0.0 && expo < 0.0)
                throw EvalError(EvalError::Kind::DomainViolation, x, "zero raised to a negative power");
            if (base < 0.0 && expo != std::floor(expo))
                throw EvalError(EvalError::Kind::DomainViolation, x,
                                "negative base raised to a non-integer power");
            return finite(std::pow(base, expo));
        }
        case ExprOp::Neg: return -eval_node(*n.a, x);
        case ExprOp::Ln: {
            double u = eval_node(*n.a, x);
            if (u <= 0.0)
                throw EvalError(EvalError::Kind::DomainViolation, x, "ln of a non-positive value");
            return finite(std::log(u));
        }
        case ExprOp::Exp: return finite(std::exp(eval_node(*n.a, x)));
        case ExprOp::Sin: return finite(std::sin(eval_node(*n.a, x)));
        case ExprOp::Cos: return finite(std::cos(eval_node(*n.a, x)));
        case ExprOp::Abs: return std::fabs(eval_node(*n.a, x));
        case ExprOp::Sqrt: {
            double u = eval_node(*n.a, x);
            if (u < 0.0)
                throw EvalError(EvalError::Kind::DomainViolation, x, "sqrt of a negative value");
            return finite(std::sqrt(u));
        }
        case ExprOp::Sgn: {
            double u = eval_node(*n.a, x);
            if (u == 0.0)
                throw EvalError(EvalError::Kind::NotDifferentiable, x,
                                "derivative of abs at a zero of its argument");
            return u > 0.0 ? 1.0 : -1.0;
        }
    }
    throw EvalError(EvalError::Kind::DomainViolation, x, "corrupt expression node");
}

bool contains_variable(const ExprNode& n) {
    if (n.op == ExprOp::Variable) return true;
    if (n.a && contains_variable(*n.a)) return true;
    if (n.b && contains_variable(*n.b)) return true;
    return false;
}

ExprHandle diff(const ExprHandle& n) {
    switch (n->op) {
        case ExprOp::Constant: return const_node(0.0);
        case ExprOp::Variable: return const_node(1.0);
        case ExprOp::Add: return mk_add(diff(n->a), diff(n->b));
        case ExprOp::Sub: return mk_sub(diff(n->a), diff(n->b));
        case ExprOp::Mul:
            return mk_add(mk_mul(diff(n->a), n->b), mk_mul(n->a, diff(n->b)));
        case ExprOp::Div:
            // (u/v)' = (u'v - uv') / v^2
            return mk_div(mk_sub(mk_mul(diff(n->a), n->b), mk_mul(n->a, diff(n->b))),
                          mk_pow(n->b, 2.0));
        case ExprOp::Pow: {
            // Exponent is a constant subexpression by construction.
            double c = n->b->value;
            return mk_mul(mk_mul(const_node(c), mk_pow(n->a, c - 1.0)), diff(n->a));
        }
        case ExprOp::Neg: return mk_neg(diff(n->a));
        case ExprOp::Ln: return mk_div(diff(n->a), n->a);
        case ExprOp::Exp: return mk_mul(diff(n->a), node(ExprOp::Exp, n->a));
        case ExprOp::Sin: return mk_mul(diff(n->a), node(ExprOp::Cos, n->a));
        case ExprOp::Cos: return mk_neg(mk_mul(diff(n->a), node(ExprOp::Sin, n->a)));
        case ExprOp::Abs: return mk_mul(node(ExprOp::Sgn, n->a), diff(n->a));
        case ExprOp::Sqrt:
            return mk_div(diff(n->a), mk_mul(const_node(2.0), node(ExprOp::Sqrt, n->a)));
        case ExprOp::Sgn:
            // Zero almost everywhere; the kink failure survives through the
            // sgn factors already present in the first derivative.
            return const_node(0.0);
    }
    return const_node(0.0);
}

ExprHandle substitute(const ExprHandle& n, const ExprHandle& replacement) {
    switch (n->op) {
        case ExprOp::Constant: return n;
        case ExprOp::Variable: return replacement;
        default: {
            ExprHandle a = n->a ? substitute(n->a, replacement) : nullptr;
            ExprHandle b = n->b ? substitute(n->b, replacement) : nullptr;
            return std::make_shared<ExprNode>(ExprNode{n->op, n->value, std::move(a), std::move(b)});
        }
    }
}

bool same_structure(const ExprNode& x, const ExprNode& y) {
    if (x.op != y.op) return false;
    if (x.op == ExprOp::Constant) return x.value == y.value;
    if (static_cast<bool>(x.a) != static_cast<bool>(y.a)) return false;
    if (static_cast<bool>(x.b) != static_cast<bool>(y.b)) return false;
    if (x.a && !same_structure(*x.a, *y.a)) return false;
    if (x.b && !same_structure(*x.b, *y.b)) return false;
    return true;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* fn_name(ExprOp op) {
    switch (op) {
        case ExprOp::Ln: return "ln";
        case ExprOp::Exp: return "exp";
        case ExprOp::Sin: return "sin";
        case ExprOp::Cos: return "cos";
        case ExprOp::Abs: return "abs";
        case ExprOp::Sqrt: return "sqrt";
        case ExprOp::Sgn: return "sgn";
        default: return "?";
    }
}

int precedence(const ExprNode& n) {
    switch (n.op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Neg: return 3;
        case ExprOp::Pow: return 4;
        default: return 5;
    }
}

void print_node(const ExprNode& n, int context, std::string& out, const std::string& var) {
    int prec = precedence(n);
    bool parens = prec < context;
    if (parens) out += '(';
    switch (n.op) {
        case ExprOp::Constant: out += format_double(n.value); break;
        case ExprOp::Variable: out += var.empty() ? "x" : var; break;
        case ExprOp::Add:
            print_node(*n.a, 1, out, var);
            out += '+';
            print_node(*n.b, 2, out, var);
            break;
        case ExprOp::Sub:
            print_node(*n.a, 1, out, var);
            out += '-';
            print_node(*n.b, 2, out, var);
            break;
        case ExprOp::Mul:
            print_node(*n.a, 2, out, var);
            out += '*';
            print_node(*n.b, 3, out, var);
            break;
        case ExprOp::Div:
            print_node(*n.a, 2, out, var);
            out += '/';
            print_node(*n.b, 3, out, var);
            break;
        case ExprOp::Neg:
            out += '-';
            print_node(*n.a, 3, out, var);
            break;
        case ExprOp::Pow:
            print_node(*n.a, 5, out, var);
            out += '^';
            print_node(*n.b, 5, out, var);
            break;
        default:
            out += fn_name(n.op);
            out += '(';
            print_node(*n.a, 0, out, var);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

// ---- parser ----

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok type;
    double num = 0.0;
    std::string text;
    std::size_t offset = 0;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t mark = i;
                ++i;
                if (i < src.size() && (src[i] == '+' || src[i] == '-')) ++i;
                if (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                    while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                } else {
                    i = mark;  // 'e' belongs to a following identifier, not this number
                }
            }
            std::string text(src.substr(start, i - start));
            out.push_back({Tok::Number, std::strtod(text.c_str(), nullptr), text, start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            out.push_back({Tok::Ident, 0.0, std::string(src.substr(start, i - start)), start});
            continue;
        }
        Tok t;
        switch (c) {
            case '+': t = Tok::Plus; break;
            case '-': t = Tok::Minus; break;
            case '*': t = Tok::Star; break;
            case '/': t = Tok::Slash; break;
            case '^': t = Tok::Caret; break;
            case '(': t = Tok::LParen; break;
            case ')': t = Tok::RParen; break;
            default:
                throw SyntaxError(start, {"number", "identifier", "operator"},
                                  "unexpected character '" + std::string(1, c) + "' at offset " +
                                      std::to_string(start));
        }
        out.push_back({t, 0.0, std::string(1, c), start});
        ++i;
    }
    out.push_back({Tok::End, 0.0, "", src.size()});
    return out;
}

bool is_function_name(const std::string& s) {
    return s == "ln" || s == "exp" || s == "sin" || s == "cos" || s == "abs" || s == "sqrt" ||
           s == "sgn";
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

    ExprHandle run(std::string& var_out) {
        ExprHandle e = parse_expr();
        if (peek().type != Tok::End)
            throw SyntaxError(peek().offset, {"operator", "end of input"},
                              "trailing input at offset " + std::to_string(peek().offset));
        var_out = var_.value_or("");
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        std::string msg = "syntax error at offset " + std::to_string(peek().offset) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += " | ";
            msg += expected[i];
        }
        throw SyntaxError(peek().offset, std::move(expected), msg);
    }

    ExprHandle parse_expr() {
        ExprHandle e = parse_term();
        while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
            bool plus = advance().type == Tok::Plus;
            ExprHandle rhs = parse_term();
            e = fold(node(plus ? ExprOp::Add : ExprOp::Sub, std::move(e), std::move(rhs)));
        }
        return e;
    }

    ExprHandle parse_term() {
        ExprHandle e = parse_unary();
        while (peek().type == Tok::Star || peek().type == Tok::Slash) {
            bool star = advance().type == Tok::Star;
            ExprHandle rhs = parse_unary();
            e = fold(node(star ? ExprOp::Mul : ExprOp::Div, std::move(e), std::move(rhs)));
        }
        return e;
    }

    ExprHandle parse_unary() {
        if (peek().type == Tok::Minus) {
            advance();
            ExprHandle inner = parse_unary();
            if (inner->op == ExprOp::Constant) return const_node(-inner->value);
            return node(ExprOp::Neg, std::move(inner));
        }
        return parse_factor();
    }

    ExprHandle parse_factor() {
        ExprHandle base = parse_atom();
        if (peek().type == Tok::Caret) {
            std::size_t caret_at = advance().offset;
            ExprHandle expo = parse_unary();  // right-associative via recursion
            if (contains_variable(*expo))
                throw SyntaxError(caret_at, {"constant exponent"},
                                  "exponent at offset " + std::to_string(caret_at) +
                                      " must be a constant expression");
            expo = fold(std::move(expo));
            if (expo->op != ExprOp::Constant)
                throw SyntaxError(caret_at, {"constant exponent"},
                                  "exponent at offset " + std::to_string(caret_at) +
                                      " does not evaluate to a finite constant");
            return fold(node(ExprOp::Pow, std::move(base), std::move(expo)));
        }
        return base;
    }

    ExprHandle parse_atom() {
        const Token& t = peek();
        switch (t.type) {
            case Tok::Number: {
                advance();
                return const_node(t.num);
            }
            case Tok::Ident: {
                advance();
                if (is_function_name(t.text)) {
                    if (peek().type != Tok::LParen) fail({"("});
                    advance();
                    ExprHandle arg = parse_expr();
                    if (peek().type != Tok::RParen) fail({")"});
                    advance();
                    ExprOp op = t.text == "ln"    ? ExprOp::Ln
                                : t.text == "exp" ? ExprOp::Exp
                                : t.text == "sin" ? ExprOp::Sin
                                : t.text == "cos" ? ExprOp::Cos
                                : t.text == "abs" ? ExprOp::Abs
                                : t.text == "sgn" ? ExprOp::Sgn
                                                  : ExprOp::Sqrt;
                    return fold(node(op, std::move(arg)));
                }
                if (var_ && *var_ != t.text) throw MultipleVariablesError(*var_, t.text);
                var_ = t.text;
                return node(ExprOp::Variable);
            }
            case Tok::LParen: {
                advance();
                ExprHandle e = parse_expr();
                if (peek().type != Tok::RParen) fail({")"});
                advance();
                return e;
            }
            default: fail({"number", "identifier", "(", "unary -"});
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::optional<std::string> var_;
};

}  // namespace

FunctionExpr FunctionExpr::parse(std::string_view source) {
    Parser p(source);
    std::string var;
    ExprHandle root = p.run(var);
    return FunctionExpr(std::move(root), std::move(var));
}

FunctionExpr FunctionExpr::constant(double c) { return FunctionExpr(const_node(c), ""); }

FunctionExpr FunctionExpr::variable(std::string name) {
    return FunctionExpr(node(ExprOp::Variable), std::move(name));
}

double FunctionExpr::operator()(double x) const { return eval_node(*root_, x); }

FunctionExpr FunctionExpr::derivative() const { return FunctionExpr(diff(root_), var_); }

FunctionExpr FunctionExpr::compose(const FunctionExpr& inner) const {
    return FunctionExpr(substitute(root_, inner.root_), inner.var_);
}

std::string FunctionExpr::str() const {
    std::string out;
    print_node(*root_, 0, out, var_);
    return out;
}

bool operator==(const FunctionExpr& x, const FunctionExpr& y) {
    return same_structure(*x.root_, *y.root_);
}

FunctionExpr abs(const FunctionExpr& f) {
    return FunctionExpr(mk_fn(ExprOp::Abs, f.root_), f.var_);
}

FunctionExpr pow(const FunctionExpr& f, double expo) {
    return FunctionExpr(mk_pow(f.root_, expo), f.var_);
}

FunctionExpr operator+(const FunctionExpr& x, const FunctionExpr& y) {
    return FunctionExpr(mk_add(x.root_, y.root_), x.var_.empty() ? y.var_ : x.var_);
}

FunctionExpr operator*(const FunctionExpr& x, const FunctionExpr& y) {
    return FunctionExpr(mk_mul(x.root_, y.root_), x.var_.empty() ? y.var_ : x.var_);
}

}  // namespace hsconvex
