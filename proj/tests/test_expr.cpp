#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "hsconvex/expr.hpp"
#include "hsconvex/rng.hpp"

using hsconvex::EvalError;
using hsconvex::FunctionExpr;
using hsconvex::MultipleVariablesError;
using hsconvex::Rng;
using hsconvex::SyntaxError;

TEST_CASE("basic evaluation") {
    CHECK(FunctionExpr::parse("x^2")(3.0) == doctest::Approx(9.0));
    CHECK(FunctionExpr::parse("ln(x)")(1.0) == 0.0);
    CHECK(FunctionExpr::parse("1/(1+x)")(1.0) == doctest::Approx(0.5));
    CHECK(FunctionExpr::parse("sqrt(x)")(4.0) == 2.0);
    CHECK(FunctionExpr::parse("sin(x)+2")(0.0) == 2.0);
    CHECK(FunctionExpr::parse("2*exp(0.5*x)+1")(0.0) == 3.0);
}

TEST_CASE("precedence and associativity") {
    // ^ binds tighter than unary minus
    CHECK(FunctionExpr::parse("-x^2")(3.0) == -9.0);
    // ^ is right-associative: x^2^3 = x^8
    CHECK(FunctionExpr::parse("x^2^3")(2.0) == 256.0);
    // unary minus binds tighter than *
    CHECK(FunctionExpr::parse("-2*x")(3.0) == -6.0);
    CHECK(FunctionExpr::parse("2-3-4")(0.0) == -5.0);
    CHECK(FunctionExpr::parse("2^-1")(0.0) == 0.5);
    CHECK(FunctionExpr::parse("x^(1+1)")(3.0) == 9.0);
}

TEST_CASE("syntax errors carry byte offsets") {
    try {
        FunctionExpr::parse("2*+x");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 2);
        CHECK(!e.expected().empty());
    }
    CHECK_THROWS_AS(FunctionExpr::parse(""), SyntaxError);
    CHECK_THROWS_AS(FunctionExpr::parse("(1+x"), SyntaxError);
    CHECK_THROWS_AS(FunctionExpr::parse("ln x"), SyntaxError);
    CHECK_THROWS_AS(FunctionExpr::parse("1 2"), SyntaxError);
    // exponent must be constant
    CHECK_THROWS_AS(FunctionExpr::parse("x^x"), SyntaxError);
    CHECK_THROWS_AS(FunctionExpr::parse("2^(x+1)"), SyntaxError);
}

TEST_CASE("two distinct variables are rejected") {
    CHECK_THROWS_AS(FunctionExpr::parse("x+t"), MultipleVariablesError);
    CHECK_NOTHROW(FunctionExpr::parse("x*x+x"));
}

TEST_CASE("domain violations") {
    CHECK_THROWS_AS(FunctionExpr::parse("1/x")(0.0), EvalError);
    CHECK_THROWS_AS(FunctionExpr::parse("ln(x)")(-1.0), EvalError);
    CHECK_THROWS_AS(FunctionExpr::parse("ln(x)")(0.0), EvalError);
    CHECK_THROWS_AS(FunctionExpr::parse("sqrt(x)")(-4.0), EvalError);
    CHECK_THROWS_AS(FunctionExpr::parse("x^-1")(0.0), EvalError);
    // non-finite intermediate
    try {
        FunctionExpr::parse("exp(x)")(1000.0);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.kind() == EvalError::Kind::NonFinite);
    }
}

TEST_CASE("derivatives of the basic rules") {
    FunctionExpr x2 = FunctionExpr::parse("x^2");
    CHECK(x2.derivative()(5.0) == 10.0);
    CHECK(FunctionExpr::parse("ln(x)").derivative()(4.0) == doctest::Approx(0.25));
    // x^4 differentiated twice at 2: 12 * 2^2 = 48
    CHECK(FunctionExpr::parse("x^4").derivative().derivative()(2.0) == doctest::Approx(48.0));
    CHECK(FunctionExpr::parse("sin(x)").derivative()(0.0) == 1.0);
    CHECK(FunctionExpr::parse("cos(x)").derivative()(0.0) == 0.0);
    CHECK(FunctionExpr::parse("exp(2*x)").derivative()(0.0) == 2.0);
    CHECK(FunctionExpr::parse("sqrt(x)").derivative()(4.0) == doctest::Approx(0.25));
    CHECK(FunctionExpr::parse("1/x").derivative()(2.0) == doctest::Approx(-0.25));
}

TEST_CASE("derivative of abs uses the sign and fails at the kink") {
    FunctionExpr d = FunctionExpr::parse("abs(x)").derivative();
    CHECK(d(2.0) == 1.0);
    CHECK(d(-2.0) == -1.0);
    try {
        d(0.0);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.kind() == EvalError::Kind::NotDifferentiable);
    }
}

namespace {

struct CorpusEntry {
    const char* text;
    double lo, hi;
};

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> c = {
        {"x^2", 0.1, 4.0},
        {"x^3", 0.1, 4.0},
        {"x^4", 0.1, 2.0},
        {"exp(x)", 0.0, 1.0},
        {"-ln(x)", 1.0, 2.0},
        {"sin(x)+2", 0.0, 1.0},
        {"1/(1+x)", 0.0, 3.0},
        {"sqrt(x)+x^2", 0.5, 2.0},
        {"x*exp(-x)+2", 0.0, 2.0},
        {"(1+x)^0.5", 0.0, 3.0},
    };
    return c;
}

// Independent oracle: central finite difference with step 1e-5.
double central_diff(const FunctionExpr& f, double x, double step = 1e-5) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

}  // namespace

TEST_CASE("symbolic derivative matches central finite differences") {
    for (const CorpusEntry& entry : corpus()) {
        FunctionExpr f = FunctionExpr::parse(entry.text);
        FunctionExpr d1 = f.derivative();
        FunctionExpr d2 = d1.derivative();
        Rng rng(42);
        for (int i = 0; i < 100; ++i) {
            double margin = 1e-3 * (entry.hi - entry.lo);
            double x = rng.next_in(entry.lo + margin, entry.hi - margin);
            double exact = d1(x);
            double approx = central_diff(f, x);
            CHECK(std::fabs(exact - approx) <= 1e-6 * (1.0 + std::fabs(exact)));
            double exact2 = d2(x);
            double approx2 = central_diff(d1, x);
            CHECK(std::fabs(exact2 - approx2) <= 1e-6 * (1.0 + std::fabs(exact2)));
        }
    }
}

TEST_CASE("print/parse round trip preserves values") {
    for (const CorpusEntry& entry : corpus()) {
        FunctionExpr f = FunctionExpr::parse(entry.text);
        FunctionExpr g = FunctionExpr::parse(f.str());
        FunctionExpr fd = f.derivative();
        FunctionExpr gd = FunctionExpr::parse(fd.str());
        Rng rng(7);
        for (int i = 0; i < 50; ++i) {
            double x = rng.next_in(entry.lo + 1e-3, entry.hi - 1e-3);
            CHECK(f(x) == g(x));  // value-level round trip, bitwise
            CHECK(fd(x) == gd(x));
        }
    }
}

TEST_CASE("evaluation is pure") {
    FunctionExpr f = FunctionExpr::parse("sin(x)*exp(x)+sqrt(x+1)");
    double a = f(0.7315);
    double b = f(0.7315);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("structural equality and simplification shape") {
    CHECK(FunctionExpr::parse("x^2") == FunctionExpr::parse("x^2"));
    CHECK_FALSE(FunctionExpr::parse("x^2") == FunctionExpr::parse("x^3"));
    // derivative of x^2 simplifies to 2*x
    CHECK(FunctionExpr::parse("x^2").derivative() == FunctionExpr::parse("2*x"));
    // constant folding happens at parse
    CHECK(FunctionExpr::parse("1+2") == FunctionExpr::constant(3.0));
}

TEST_CASE("composition substitutes the variable") {
    FunctionExpr sq = FunctionExpr::parse("x^2");
    FunctionExpr quartic = sq.compose(sq);
    CHECK(quartic(3.0) == 81.0);
    FunctionExpr shifted = FunctionExpr::parse("x+1");
    CHECK(sq.compose(shifted)(2.0) == 9.0);
    // composing a function of t keeps t as the free variable
    FunctionExpr ht = FunctionExpr::parse("2*t");
    CHECK(sq.compose(ht).variable_name() == "t");
}

TEST_CASE("constants have no free variable") {
    FunctionExpr c = FunctionExpr::parse("3.5");
    CHECK(c.is_constant());
    CHECK(c.variable_name().empty());
    CHECK(c(123.0) == 3.5);
}
