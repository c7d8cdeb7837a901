#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace hsconvex {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// The adaptive scheme exhausted its budget without the error estimate
/// decreasing: the integrand is divergent or pathologically rough.
class QuadratureDivergence : public std::runtime_error {
public:
    QuadratureDivergence(QuadResult partial, const std::string& msg)
        : std::runtime_error(msg), partial_(partial) {}
    const QuadResult& partial() const { return partial_; }

private:
    QuadResult partial_;
};

using RealFn = std::function<double(double)>;

struct QuadOptions {
    double tol = 1e-10;
    long budget = 1000000;
};

/// Adaptive integration of f over [a, b] with a Gauss(7)/Kronrod(15)
/// embedded pair. The rule is open: no evaluation point ever equals a or b,
/// so endpoint singularities such as t^(-1/2) integrate cleanly. Panels are
/// bisected worst-error-first until the summed error estimate drops below
/// tol or the evaluation budget runs out. Deterministic: panel ordering and
/// the final reduction are fixed, so results are bit-for-bit reproducible.
///
/// Throws QuadratureDivergence on budget exhaustion with a non-decreasing
/// error estimate; exceptions thrown by f propagate to the caller.
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opt = {});

/// As integrate(), but splits the interval at the given kink abscissae
/// (sorted, strictly inside (a, b)) before adapting. Values and error
/// estimates add across the pieces.
QuadResult integrate_kink_aware(const RealFn& f, double a, double b,
                                std::span<const double> kinks, const QuadOptions& opt = {});

}  // namespace hsconvex
