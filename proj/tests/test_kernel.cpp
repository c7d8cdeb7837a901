#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsconvex/kernel.hpp"

using hsconvex::FunctionExpr;
using hsconvex::HKernel;
using hsconvex::KernelDomainError;
using hsconvex::QuadratureDivergence;
using hsconvex::QuadResult;
using hsconvex::UsageError;

namespace {
HKernel make(const char* h, double s) { return HKernel(FunctionExpr::parse(h), s); }
}  // namespace

TEST_CASE("pointwise evaluation") {
    CHECK(make("t", 1.0)(0.3) == doctest::Approx(0.3));
    CHECK(make("1/t", 0.5)(0.25) == doctest::Approx(2.0));
    CHECK(make("t", 0.5)(0.25) == doctest::Approx(0.5));
    CHECK_THROWS_AS(make("1/t", 0.5)(0.0), KernelDomainError);
    // endpoints allowed when h is finite there
    CHECK(make("t", 1.0)(0.0) == 0.0);
    CHECK(make("t", 1.0)(1.0) == 1.0);
}

TEST_CASE("negative kernels are rejected") {
    CHECK_THROWS_AS(make("t-2", 1.0), KernelDomainError);
    CHECK_THROWS_AS(make("0", 1.0), KernelDomainError);  // identically zero
    CHECK_NOTHROW(make("2*t", 1.0));                     // h may exceed 1
}

TEST_CASE("exponent is validated strictly") {
    CHECK_THROWS_AS(make("t", 0.0), UsageError);
    CHECK_THROWS_AS(make("t", -0.5), UsageError);
    CHECK_THROWS_AS(make("t", 1.5), UsageError);
    CHECK_NOTHROW(make("t", 1.0));
    CHECK_NOTHROW(make("t", 1e-3));
}

TEST_CASE("kernel constant closed forms") {
    CHECK(std::fabs(make("t", 1.0).k_constant().value - 0.5) <= 1e-10);
    // K = 1/(s+1) for h(t)=t
    CHECK(std::fabs(make("t", 0.5).k_constant().value - 2.0 / 3.0) <= 1e-10);
    CHECK(std::fabs(make("t", 0.25).k_constant().value - 0.8) <= 1e-10);
    // endpoint-singular case: integral of t^(-1/2) is 2
    QuadResult k = make("1/t", 0.5).k_constant();
    CHECK(std::fabs(k.value - 2.0) <= 1e-8);
    CHECK(k.converged);
}

TEST_CASE("divergent kernel constant") {
    CHECK_THROWS_AS(make("1/t", 1.0).k_constant(), QuadratureDivergence);
}

TEST_CASE("symmetry of K under t -> 1-t") {
    const double tol = 1e-10;
    for (const char* h : {"t", "2*t", "t^2", "sqrt(t)", "1-t", "t*(1-t)+0.1"}) {
        for (double s : {0.25, 0.5, 1.0}) {
            HKernel kernel = make(h, s);
            QuadResult direct = hsconvex::integrate([&](double t) { return kernel(t); }, 0.0,
                                                    1.0, {tol, 1000000});
            QuadResult mirrored = hsconvex::integrate(
                [&](double t) { return kernel(1.0 - t); }, 0.0, 1.0, {tol, 1000000});
            CHECK(std::fabs(direct.value - mirrored.value) <= 2.0 * tol);
        }
    }
    // singular case at its reachable tolerance
    HKernel inv = make("1/t", 0.5);
    const double loose = 1e-7;
    QuadResult direct =
        hsconvex::integrate([&](double t) { return inv(t); }, 0.0, 1.0, {loose, 1000000});
    QuadResult mirrored =
        hsconvex::integrate([&](double t) { return inv(1.0 - t); }, 0.0, 1.0, {loose, 1000000});
    CHECK(std::fabs(direct.value - mirrored.value) <= 2.0 * loose);
}

TEST_CASE("monotonicity of K in s for h(t)=t") {
    double prev = 2.0;  // upper bound as s -> 0
    for (double s : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        double k = make("t", s).k_constant().value;
        CHECK(k <= prev + 1e-12);
        prev = k;
    }
}

TEST_CASE("identity detection and epsilon guard") {
    CHECK(make("t", 1.0).h_is_identity());
    CHECK_FALSE(make("2*t", 1.0).h_is_identity());
    HKernel inv = make("1/t", 0.5);
    CHECK(inv.eval_epsilon() == 1e-6);
    CHECK_FALSE(inv.finite_at(0.0));
    CHECK(inv.finite_at(1.0));
}
