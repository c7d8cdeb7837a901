#pragma once

#include "hsconvex/expr.hpp"
#include "hsconvex/quadrature.hpp"

namespace hsconvex {

/// The kernel pair (h, s): a nonnegative weight function h on (0, 1) raised
/// to the exponent s in (0, 1]. Immutable and freely shareable.
///
/// Admissibility, checked at construction over [eval_epsilon, 1 - eval_epsilon]:
/// h^s evaluates to a finite nonnegative value everywhere on the guarded
/// interval, and h is not identically zero there. Integrability of h^s over
/// [0, 1] is checked by k_constant(), which tolerates endpoint singularities.
class HKernel {
public:
    HKernel(FunctionExpr h, double s, double eval_epsilon = 1e-6);

    /// h(t)^s. Throws KernelDomainError when h is undefined, non-finite, or
    /// negative at t. t = 0 and t = 1 are allowed whenever h is finite there.
    double operator()(double t) const;

    /// Raw h(t), with the same domain checks but no exponent applied.
    double h_value(double t) const;

    /// K = integral of h^s(t) over [0, 1], with error estimate <= tol.
    /// Also integrates h^s(1 - t) and verifies the two agree within 2*tol.
    /// Throws QuadratureDivergence when the improper integral diverges.
    QuadResult k_constant(double tol = 1e-10) const;

    double s() const { return s_; }
    double eval_epsilon() const { return eval_epsilon_; }
    const FunctionExpr& h() const { return h_; }

    /// True for the plain kernel h(t) = t, which has closed-form constants.
    bool h_is_identity() const { return h_.is_identity(); }

    /// Whether h^s is evaluable at the interval endpoints; callers use this
    /// to clamp pointwise t-grids away from singular endpoints.
    bool finite_at(double t) const;

private:
    FunctionExpr h_;
    double s_;
    double eval_epsilon_;
};

}  // namespace hsconvex
