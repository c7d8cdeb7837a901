#include "hsconvex/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hsconvex/rng.hpp"

namespace hsconvex {

SampleGrid SampleGrid::uniform(double lo, double hi, std::uint64_t seed, int nx, int nt,
                               int random_count, double t_lo, double t_hi) {
    if (!(lo >= 0.0)) throw UsageError("sample domain must lie in [0, inf)");
    if (!(lo < hi)) throw UsageError("sample domain requires lo < hi");
    if (!(0.0 <= t_lo && t_lo < t_hi && t_hi <= 1.0))
        throw UsageError("t range must satisfy 0 <= t_lo < t_hi <= 1");
    SampleGrid g;
    g.x_points = linspace(lo, hi, nx);
    g.t_points = linspace(t_lo, t_hi, nt);
    g.seed = seed;
    g.random_count = random_count;
    return g;
}

double SampleGrid::lo() const { return x_points.front(); }
double SampleGrid::hi() const { return x_points.back(); }
double SampleGrid::t_lo() const { return t_points.front(); }
double SampleGrid::t_hi() const { return t_points.back(); }

const char* class_id_name(ClassId id) {
    switch (id) {
        case ClassId::Convex: return "convex";
        case ClassId::SConvex2: return "s-convex-2";
        case ClassId::HConvex: return "h-convex";
        case ClassId::Hs1: return "hs1";
        case ClassId::Hs2: return "hs2";
    }
    return "?";
}

const char* verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Satisfied: return "satisfied";
        case VerdictKind::Violated: return "violated";
        case VerdictKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* observation_name(Observation o) {
    switch (o) {
        case Observation::Obs1: return "obs1";
        case Observation::Obs2: return "obs2";
        case Observation::Obs3: return "obs3";
    }
    return "?";
}

std::pair<double, double> effective_t_range(const HKernel& kernel) {
    double lo = kernel.finite_at(0.0) ? 0.0 : kernel.eval_epsilon();
    double hi = kernel.finite_at(1.0) ? 1.0 : 1.0 - kernel.eval_epsilon();
    return {lo, hi};
}

std::pair<double, double> membership_t_range(const HKernel& kernel) {
    auto [lo, hi] = effective_t_range(kernel);
    return {std::max(lo, 1.0 - hi), std::min(hi, 1.0 - lo)};
}

namespace {

bool witness_before(const Witness& a, const Witness& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.t < b.t;
}

// Worst-sample accumulator with the deterministic tie-break.
struct WorstTracker {
    double max_violation = -std::numeric_limits<double>::infinity();
    std::optional<Witness> worst;
    long samples = 0;

    void record(const Witness& w) {
        ++samples;
        double violation = w.lhs - w.rhs;
        if (violation > max_violation ||
            (violation == max_violation && worst && witness_before(w, *worst))) {
            max_violation = violation;
            worst = w;
        }
    }
};

// Weight pair (w_x, w_y) for one class at parameter t.
struct Weights {
    double wx, wy;
};

Weights class_weights(ClassId cls, double t, double s, const HKernel* kernel) {
    switch (cls) {
        case ClassId::Convex: return {t, 1.0 - t};
        case ClassId::SConvex2: return {std::pow(t, s), std::pow(1.0 - t, s)};
        case ClassId::HConvex: return {kernel->h_value(t), kernel->h_value(1.0 - t)};
        case ClassId::Hs1: {
            double w = (*kernel)(t);
            return {w, 1.0 - w};
        }
        case ClassId::Hs2: return {(*kernel)(t), (*kernel)(1.0 - t)};
    }
    return {0.0, 0.0};
}

}  // namespace

Verdict check_membership(const FunctionExpr& f, ClassId cls, const SampleGrid& grid, double tol,
                         const HKernel* kernel, std::optional<double> s_override) {
    const bool needs_kernel =
        cls == ClassId::HConvex || cls == ClassId::Hs1 || cls == ClassId::Hs2;
    if (needs_kernel && kernel == nullptr)
        throw UsageError(std::string("class ") + class_id_name(cls) + " requires a kernel");
    double s = 1.0;
    if (cls == ClassId::SConvex2) {
        if (s_override)
            s = *s_override;
        else if (kernel)
            s = kernel->s();
        else
            throw UsageError("class s-convex-2 requires an exponent s");
        if (!(s > 0.0) || s > 1.0) throw UsageError("exponent s must lie in (0, 1]");
    }

    // Nonnegativity precondition: the class definitions require f >= 0 on I.
    auto require_nonnegative = [&](double x) {
        double v = f(x);
        if (v < 0.0)
            throw PreconditionError(x, "function is negative at sampled x = " + std::to_string(x));
        return v;
    };
    for (double x : grid.x_points) require_nonnegative(x);

    WorstTracker tracker;
    long kernel_failures = 0;
    long kernel_draws = 0;
    std::string first_failure;

    auto eval_triple = [&](double x, double y, double t) {
        Weights w{};
        if (needs_kernel) ++kernel_draws;
        try {
            w = class_weights(cls, t, s, kernel);
        } catch (const KernelDomainError& e) {
            ++kernel_failures;
            if (first_failure.empty()) first_failure = e.what();
            return;
        }
        double lhs = f(t * x + (1.0 - t) * y);
        double rhs = w.wx * f(x) + w.wy * f(y);
        if (!std::isfinite(rhs))
            throw EvalError(EvalError::Kind::NonFinite, t,
                            "weighted right-hand side overflowed");
        tracker.record({x, y, t, lhs, rhs});
    };

    try {
        for (double x : grid.x_points)
            for (double y : grid.x_points)
                for (double t : grid.t_points) eval_triple(x, y, t);

        Rng rng(grid.seed);
        for (int i = 0; i < grid.random_count; ++i) {
            double x = rng.next_in(grid.lo(), grid.hi());
            double y = rng.next_in(grid.lo(), grid.hi());
            double t = rng.next_in(grid.t_lo(), grid.t_hi());
            require_nonnegative(x);
            require_nonnegative(y);
            eval_triple(x, y, t);
        }
    } catch (const EvalError& e) {
        return {VerdictKind::Inconclusive, 0.0, std::nullopt, tracker.samples,
                std::string("function evaluation failed: ") + e.what()};
    }

    if (kernel_draws > 0 &&
        static_cast<double>(kernel_failures) > 0.01 * static_cast<double>(kernel_draws)) {
        return {VerdictKind::Inconclusive, 0.0, std::nullopt, tracker.samples,
                "kernel evaluation failed on more than 1% of t-samples: " + first_failure};
    }

    Verdict v;
    v.samples_checked = tracker.samples;
    v.max_violation = tracker.max_violation;
    if (tracker.max_violation > tol) {
        v.kind = VerdictKind::Violated;
        v.witness = tracker.worst;
    } else {
        v.kind = VerdictKind::Satisfied;
    }
    return v;
}

Verdict check_inclusion_condition(const HKernel& kernel, Observation which,
                                  std::span<const double> t_grid, double tol) {
    WorstTracker tracker;
    for (double t : t_grid) {
        double lhs, rhs;  // condition holds when rhs - lhs >= -tol
        try {
            switch (which) {
                case Observation::Obs1:
                    // h^s(t) >= t
                    lhs = t;
                    rhs = kernel(t);
                    break;
                case Observation::Obs2: {
                    // h(t) >= t
                    lhs = t;
                    rhs = std::pow(kernel(t), 1.0 / kernel.s());
                    break;
                }
                case Observation::Obs3: {
                    // h(t)^(s-1) >= 1, h(t) > 0
                    double h = std::pow(kernel(t), 1.0 / kernel.s());
                    lhs = 1.0;
                    if (h <= 0.0) {
                        tracker.record({t, 0.0, t, 1.0, 0.0});  // h = 0 fails the condition
                        continue;
                    }
                    rhs = std::pow(h, kernel.s() - 1.0);
                    break;
                }
                default: lhs = rhs = 0.0; break;
            }
        } catch (const KernelDomainError& e) {
            return {VerdictKind::Inconclusive, 0.0, std::nullopt, tracker.samples,
                    std::string("kernel evaluation failed: ") + e.what()};
        }
        tracker.record({t, 0.0, t, lhs, rhs});
    }

    Verdict v;
    v.samples_checked = tracker.samples;
    v.max_violation = tracker.max_violation;
    if (tracker.max_violation > tol) {
        v.kind = VerdictKind::Violated;
        v.witness = tracker.worst;
    } else {
        v.kind = VerdictKind::Satisfied;
    }
    return v;
}

CrossCheckResult cross_check_inclusion(const FunctionExpr& f, const HKernel& kernel,
                                       Observation which, const SampleGrid& grid, double tol) {
    CrossCheckResult out;

    ClassId base = which == Observation::Obs1   ? ClassId::Convex
                   : which == Observation::Obs2 ? ClassId::SConvex2
                                                : ClassId::HConvex;
    out.base = check_membership(f, base, grid, tol, &kernel);
    out.condition = check_inclusion_condition(kernel, which, grid.t_points, tol);
    out.hs2 = check_membership(f, ClassId::Hs2, grid, tol, &kernel);

    if (out.base.kind == VerdictKind::Inconclusive ||
        out.condition.kind == VerdictKind::Inconclusive) {
        out.hs2.kind = VerdictKind::Inconclusive;
        out.hs2.reason = "prerequisite check inconclusive";
        return out;
    }

    out.implication_tested = out.base.kind == VerdictKind::Satisfied &&
                             out.condition.kind == VerdictKind::Satisfied;
    if (out.implication_tested) {
        out.implication_holds = out.hs2.kind == VerdictKind::Satisfied;
        if (!out.implication_holds)
            out.hs2.reason = "inclusion implication failed: base class and condition hold but "
                             "(h-s)2 membership is violated";
    } else {
        out.hs2.reason = "implication vacuous: " +
                         std::string(out.base.kind != VerdictKind::Satisfied
                                         ? "base class membership not satisfied"
                                         : "kernel condition not satisfied");
    }
    return out;
}

}  // namespace hsconvex
