#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "hsconvex/errors.hpp"

namespace hsconvex {

enum class ExprOp {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Pow,  // exponent is always a constant subexpression
    Neg,
    Ln,
    Exp,
    Sin,
    Cos,
    Abs,
    Sqrt,
    Sgn,  // produced by differentiating Abs; fails at argument 0
};

struct ExprNode;
using ExprHandle = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprOp op;
    double value = 0.0;  // Constant payload
    ExprHandle a, b;     // operands; b only for binary ops
};

/// An immutable univariate real function. Values are cheap to copy and safe
/// to share across threads.
///
/// Grammar accepted by parse():
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | factor
///   factor := atom ['^' unary]          (exponent must be constant)
///   atom   := number | ident | '(' expr ')' | func '(' expr ')'
///   func   := ln | exp | sin | cos | abs | sqrt | sgn
/// Precedence is ^ > unary - > * / > + -, with ^ right-associative.
class FunctionExpr {
public:
    FunctionExpr() : FunctionExpr(constant(0.0)) {}

    static FunctionExpr parse(std::string_view source);
    static FunctionExpr constant(double c);
    static FunctionExpr variable(std::string name);

    /// Evaluate at x. Throws EvalError on domain violations (ln/sqrt of a
    /// negative, division by zero, 0^negative) and on non-finite
    /// intermediates. Pure: identical inputs give bitwise-identical results.
    double operator()(double x) const;

    /// Exact symbolic derivative. abs differentiates to sgn(u)*u', which
    /// fails with EvalError(NotDifferentiable) when evaluated at u = 0.
    FunctionExpr derivative() const;

    /// Substitute this expression's variable by `inner`.
    FunctionExpr compose(const FunctionExpr& inner) const;

    /// Printable form that parses back to a value-identical expression.
    std::string str() const;

    /// Name of the single free variable; empty for constants.
    const std::string& variable_name() const { return var_; }

    bool is_constant() const { return root_->op == ExprOp::Constant; }
    /// True when the expression is exactly the bare variable (h(t) = t).
    bool is_identity() const { return root_->op == ExprOp::Variable; }
    double constant_value() const { return root_->value; }

    const ExprHandle& root() const { return root_; }

    /// Structural equality (same tree, constants compared by value).
    friend bool operator==(const FunctionExpr& x, const FunctionExpr& y);

private:
    FunctionExpr(ExprHandle root, std::string var) : root_(std::move(root)), var_(std::move(var)) {}

    ExprHandle root_;
    std::string var_;

    friend FunctionExpr abs(const FunctionExpr&);
    friend FunctionExpr pow(const FunctionExpr&, double);
    friend FunctionExpr operator+(const FunctionExpr&, const FunctionExpr&);
    friend FunctionExpr operator*(const FunctionExpr&, const FunctionExpr&);
};

// Combinators for assembling derived quantities (|F''|, |F''|^q, families
// built from sampled coefficients).
FunctionExpr abs(const FunctionExpr& f);
FunctionExpr pow(const FunctionExpr& f, double expo);
FunctionExpr operator+(const FunctionExpr& x, const FunctionExpr& y);
FunctionExpr operator*(const FunctionExpr& x, const FunctionExpr& y);

}  // namespace hsconvex
