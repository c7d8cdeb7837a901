#include "hsconvex/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsconvex/errors.hpp"

namespace hsconvex {

HKernel::HKernel(FunctionExpr h, double s, double eval_epsilon)
    : h_(std::move(h)), s_(s), eval_epsilon_(eval_epsilon) {
    if (!(s > 0.0) || s > 1.0) throw UsageError("kernel exponent s must lie in (0, 1]");
    if (!(eval_epsilon > 0.0) || eval_epsilon >= 0.5)
        throw UsageError("kernel eval-epsilon must lie in (0, 0.5)");

    // Pointwise admissibility sweep over the guarded interval.
    const int probes = 257;
    bool nonzero = false;
    for (int i = 0; i < probes; ++i) {
        double t = eval_epsilon_ + (1.0 - 2.0 * eval_epsilon_) * static_cast<double>(i) /
                                       static_cast<double>(probes - 1);
        double v = (*this)(t);  // throws KernelDomainError on violation
        if (v != 0.0) nonzero = true;
    }
    if (!nonzero)
        throw KernelDomainError(eval_epsilon_, "kernel h is identically zero on (0, 1)");
}

double HKernel::h_value(double t) const {
    double ht;
    try {
        ht = h_(t);
    } catch (const EvalError& e) {
        throw KernelDomainError(t, "kernel h undefined at t = " + std::to_string(t) + ": " +
                                       e.what());
    }
    if (ht < 0.0)
        throw KernelDomainError(t, "kernel h negative at t = " + std::to_string(t));
    return ht;
}

double HKernel::operator()(double t) const {
    double v = std::pow(h_value(t), s_);
    if (!std::isfinite(v))
        throw KernelDomainError(t, "kernel h^s non-finite at t = " + std::to_string(t));
    return v;
}

QuadResult HKernel::k_constant(double tol) const {
    if (!(tol > 0.0)) throw UsageError("k_constant tolerance must be positive");
    QuadResult direct = integrate([this](double t) { return (*this)(t); }, 0.0, 1.0, {tol, 1000000});
    // The mirrored integrand h^s(1-t) puts any t=0 singularity at t=1,
    // where the spacing of doubles caps the reachable accuracy near 1e-8;
    // the mirror check therefore runs with a floor on its tolerance.
    double mirror_tol = finite_at(0.0) && finite_at(1.0) ? tol : std::max(tol, 1e-7);
    QuadResult mirrored = integrate([this](double t) { return (*this)(1.0 - t); }, 0.0, 1.0,
                                    {mirror_tol, 1000000});
    if (std::fabs(direct.value - mirrored.value) > 2.0 * mirror_tol)
        throw InternalCheckError("kernel constant mismatch: integral of h^s(t) and h^s(1-t) "
                                 "differ beyond 2*tol");
    direct.evaluations += mirrored.evaluations;
    return direct;
}

bool HKernel::finite_at(double t) const {
    try {
        (*this)(t);
        return true;
    } catch (const KernelDomainError&) {
        return false;
    }
}

}  // namespace hsconvex
