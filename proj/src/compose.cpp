#include "hsconvex/compose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsconvex/rng.hpp"

namespace hsconvex {

const char* closure_theorem_name(ClosureTheorem t) {
    switch (t) {
        case ClosureTheorem::T21: return "theorem-2.1";
        case ClosureTheorem::T22: return "theorem-2.2";
        case ClosureTheorem::T23: return "theorem-2.3";
        case ClosureTheorem::T24: return "theorem-2.4";
        case ClosureTheorem::T26: return "theorem-2.6";
        case ClosureTheorem::T27: return "theorem-2.7";
    }
    return "?";
}

ClassId closure_target_class(ClosureTheorem t) {
    switch (t) {
        case ClosureTheorem::T21:
        case ClosureTheorem::T22:
        case ClosureTheorem::T27: return ClassId::Hs1;
        default: return ClassId::Hs2;
    }
}

Verdict check_compose_condition(const HKernel& kernel, ComposeVariant variant,
                                std::span<const double> t_grid, double tol) {
    Verdict v;
    v.max_violation = -std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        double w, ww;
        try {
            w = kernel(t);
            ww = kernel(w);
        } catch (const KernelDomainError& e) {
            return {VerdictKind::Inconclusive, 0.0, std::nullopt, v.samples_checked,
                    "h^s(t) leaves the kernel domain at t = " + std::to_string(t) + ": " +
                        e.what()};
        }
        ++v.samples_checked;
        double violation = variant == ComposeVariant::Thm26Leq ? ww - w : std::fabs(ww - w);
        if (violation > v.max_violation ||
            (violation == v.max_violation && v.witness && t < v.witness->t)) {
            v.max_violation = violation;
            v.witness = Witness{t, 0.0, t, ww, w};
        }
    }
    if (v.max_violation > tol) {
        v.kind = VerdictKind::Violated;
    } else {
        v.kind = VerdictKind::Satisfied;
        v.witness.reset();
    }
    return v;
}

Verdict sampled_linearity(const FunctionExpr& g, const SampleGrid& grid, double tol) {
    Verdict v;
    v.max_violation = -std::numeric_limits<double>::infinity();
    Rng rng(grid.seed ^ 0x11u);
    auto probe = [&](double x, double y, double alpha, double beta) {
        double lhs = g(alpha * x + beta * y);
        double rhs = alpha * g(x) + beta * g(y);
        ++v.samples_checked;
        double violation = std::fabs(lhs - rhs) - tol * (1.0 + std::fabs(lhs) + std::fabs(rhs));
        if (violation > v.max_violation) {
            v.max_violation = violation;
            v.witness = Witness{x, y, alpha, lhs, rhs};
        }
    };
    try {
        for (double x : grid.x_points)
            for (double y : grid.x_points) probe(x, y, 0.5, 0.5);
        for (int i = 0; i < grid.random_count; ++i) {
            double x = rng.next_in(grid.lo(), grid.hi());
            double y = rng.next_in(grid.lo(), grid.hi());
            probe(x, y, rng.next_unit(), rng.next_unit());
        }
    } catch (const EvalError& e) {
        return {VerdictKind::Inconclusive, 0.0, std::nullopt, v.samples_checked,
                std::string("evaluation failed: ") + e.what()};
    }
    v.kind = v.max_violation > 0.0 ? VerdictKind::Violated : VerdictKind::Satisfied;
    if (v.kind == VerdictKind::Satisfied) v.witness.reset();
    return v;
}

Verdict sampled_convexity(const FunctionExpr& g, const SampleGrid& grid, double tol) {
    Verdict v;
    v.max_violation = -std::numeric_limits<double>::infinity();
    try {
        for (double x : grid.x_points)
            for (double y : grid.x_points)
                for (double t : grid.t_points) {
                    double lhs = g(t * x + (1.0 - t) * y);
                    double rhs = t * g(x) + (1.0 - t) * g(y);
                    ++v.samples_checked;
                    double violation = lhs - rhs;
                    if (violation > v.max_violation) {
                        v.max_violation = violation;
                        v.witness = Witness{x, y, t, lhs, rhs};
                    }
                }
    } catch (const EvalError& e) {
        return {VerdictKind::Inconclusive, 0.0, std::nullopt, v.samples_checked,
                std::string("evaluation failed: ") + e.what()};
    }
    v.kind = v.max_violation > tol ? VerdictKind::Violated : VerdictKind::Satisfied;
    if (v.kind == VerdictKind::Satisfied) v.witness.reset();
    return v;
}

Verdict sampled_increasing(const FunctionExpr& f, const SampleGrid& grid) {
    Verdict v;
    v.max_violation = -std::numeric_limits<double>::infinity();
    std::vector<double> xs = grid.x_points;
    Rng rng(grid.seed ^ 0x22u);
    for (int i = 0; i < grid.random_count; ++i) xs.push_back(rng.next_in(grid.lo(), grid.hi()));
    std::sort(xs.begin(), xs.end());
    try {
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            double fx = f(xs[i]), fy = f(xs[i + 1]);
            ++v.samples_checked;
            double violation = fx - fy;  // > 0 means decreasing step
            if (violation > v.max_violation) {
                v.max_violation = violation;
                v.witness = Witness{xs[i], xs[i + 1], 0.0, fx, fy};
            }
        }
    } catch (const EvalError& e) {
        return {VerdictKind::Inconclusive, 0.0, std::nullopt, v.samples_checked,
                std::string("evaluation failed: ") + e.what()};
    }
    v.kind = v.max_violation > 0.0 ? VerdictKind::Violated : VerdictKind::Satisfied;
    if (v.kind == VerdictKind::Satisfied) v.witness.reset();
    return v;
}

Verdict sampled_range_nonnegative(const FunctionExpr& g, const SampleGrid& grid) {
    Verdict v;
    v.max_violation = -std::numeric_limits<double>::infinity();
    std::vector<double> xs = grid.x_points;
    Rng rng(grid.seed ^ 0x33u);
    for (int i = 0; i < grid.random_count; ++i) xs.push_back(rng.next_in(grid.lo(), grid.hi()));
    try {
        for (double x : xs) {
            double gx = g(x);
            ++v.samples_checked;
            double violation = -gx;
            if (violation > v.max_violation) {
                v.max_violation = violation;
                v.witness = Witness{x, 0.0, 0.0, gx, 0.0};
            }
        }
    } catch (const EvalError& e) {
        return {VerdictKind::Inconclusive, 0.0, std::nullopt, v.samples_checked,
                std::string("evaluation failed: ") + e.what()};
    }
    v.kind = v.max_violation > 0.0 ? VerdictKind::Violated : VerdictKind::Satisfied;
    if (v.kind == VerdictKind::Satisfied) v.witness.reset();
    return v;
}

namespace {

FunctionExpr iterate_composition(const FunctionExpr& f, int power) {
    FunctionExpr out = f;
    for (int i = 1; i < power; ++i) out = f.compose(out);
    return out;
}

void require(ComposeReport& report, const char* name, const Verdict& v, const char* what) {
    report.hypotheses.push_back({name, v.kind, v.reason});
    if (v.kind != VerdictKind::Satisfied)
        throw HypothesisNotMet(name, std::string("hypothesis not met: ") + what);
}

}  // namespace

ComposeReport compose_and_check(const CompositionSpec& spec, const HKernel& kernel,
                                ClosureTheorem theorem, const SampleGrid& grid, double tol) {
    if (spec.power < 1) throw UsageError("composition power must be >= 1");
    if (spec.power > 1 && !(spec.outer == spec.inner))
        throw UsageError("power > 1 requires inner == outer (self-composition)");

    ComposeReport report;
    report.theorem = theorem;
    const ClassId target = closure_target_class(theorem);

    const bool thm_linear = theorem == ClosureTheorem::T21 || theorem == ClosureTheorem::T23;
    const bool thm_convex = theorem == ClosureTheorem::T22 || theorem == ClosureTheorem::T24;
    const bool thm_increasing = thm_convex;
    const bool thm_condition =
        theorem == ClosureTheorem::T26 || theorem == ClosureTheorem::T27;
    const bool inner_in_class = thm_condition;

    if (theorem == ClosureTheorem::T22)
        // As stated the claim attributes convexity to f, but the composition
        // argument needs g convex; the tool checks g.
        report.notes.push_back("theorem-2.2: convexity hypothesis applied to g (the derivation "
                               "uses g's convexity, not f's)");

    if (thm_linear || spec.inner_kind == InnerKind::Linear)
        require(report, "g-linear", sampled_linearity(spec.inner, grid, tol), "g is not linear");
    if (thm_convex || spec.inner_kind == InnerKind::Convex)
        require(report, "g-convex", sampled_convexity(spec.inner, grid, tol), "g is not convex");
    if (thm_increasing)
        require(report, "f-increasing", sampled_increasing(spec.outer, grid),
                "f is not increasing");
    if (thm_condition) {
        auto [tlo, thi] = effective_t_range(kernel);
        const bool leq = theorem == ClosureTheorem::T26;
        require(report, leq ? "kernel-condition-leq" : "kernel-condition-eq",
                check_compose_condition(kernel,
                                        leq ? ComposeVariant::Thm26Leq : ComposeVariant::Thm27Eq,
                                        linspace(tlo, thi, 33), tol),
                leq ? "h^s(h^s(t)) <= h^s(t) fails" : "h^s(h^s(t)) = h^s(t) fails");
    }

    const char* f_label = target == ClassId::Hs1 ? "f-hs1" : "f-hs2";
    const char* f_what =
        target == ClassId::Hs1 ? "f is not (h-s)1-convex" : "f is not (h-s)2-convex";
    require(report, f_label, check_membership(spec.outer, target, grid, tol, &kernel), f_what);
    if (inner_in_class) {
        const char* g_label = target == ClassId::Hs1 ? "g-hs1" : "g-hs2";
        const char* g_what =
            target == ClassId::Hs1 ? "g is not (h-s)1-convex" : "g is not (h-s)2-convex";
        require(report, g_label, check_membership(spec.inner, target, grid, tol, &kernel), g_what);
    }

    // The composition feeds g's values into f, so g must land in f's
    // domain [0, inf).
    require(report, "g-range-nonnegative", sampled_range_nonnegative(spec.inner, grid),
            "g takes negative values on the sampled window");

    FunctionExpr composed = spec.power > 1 ? iterate_composition(spec.outer, spec.power)
                                           : spec.outer.compose(spec.inner);
    report.membership = check_membership(composed, target, grid, tol, &kernel);
    return report;
}

std::vector<Verdict> self_composition_powers(const FunctionExpr& f, const HKernel& kernel,
                                             ClassId cls, int max_power, const SampleGrid& grid,
                                             double tol) {
    if (max_power < 1) throw UsageError("max power must be >= 1");
    max_power = std::min(max_power, 5);

    std::vector<Verdict> out;
    std::vector<double> xs = grid.x_points;
    Rng rng(grid.seed ^ 0x44u);
    for (int i = 0; i < grid.random_count; ++i) xs.push_back(rng.next_in(grid.lo(), grid.hi()));

    FunctionExpr iterate = f;
    bool escaped = false;
    std::string escape_reason;
    for (int power = 1; power <= max_power; ++power) {
        if (power > 1) {
            if (!escaped) {
                // The next power evaluates f at the previous iterate's
                // values; those must stay inside the checked window.
                FunctionExpr prev = iterate;
                for (double x : xs) {
                    double v;
                    try {
                        v = prev(x);
                    } catch (const EvalError& e) {
                        escaped = true;
                        escape_reason = std::string("iterate evaluation failed: ") + e.what();
                        break;
                    }
                    if (v < grid.lo() || v > grid.hi()) {
                        escaped = true;
                        escape_reason = "iterate escapes the sampled domain [" +
                                        std::to_string(grid.lo()) + ", " +
                                        std::to_string(grid.hi()) + "] at x = " +
                                        std::to_string(x) + " (value " + std::to_string(v) + ")";
                        break;
                    }
                }
            }
            iterate = f.compose(iterate);
        }
        if (escaped) {
            out.push_back({VerdictKind::Inconclusive, 0.0, std::nullopt, 0, escape_reason});
            continue;
        }
        out.push_back(check_membership(iterate, cls, grid, tol, &kernel));
    }
    return out;
}

}  // namespace hsconvex
