#include "hsconvex/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hsconvex/bounds.hpp"
#include "hsconvex/compose.hpp"
#include "hsconvex/means.hpp"
#include "hsconvex/rng.hpp"

namespace hsconvex {

int slack_bin(double slack) {
    static const double edges[] = {-1.0, -1e-3, -1e-6, -1e-9, 0.0, 1e-9, 1e-6, 1e-3, 1.0};
    int bin = 0;
    for (double e : edges) {
        if (slack < e) return bin;
        ++bin;
    }
    return kSlackBins - 1;
}

namespace {

double lookup(const Binding& binding, const std::map<std::string, double>& fixed,
              const std::string& name, std::optional<double> fallback = std::nullopt) {
    for (const auto& [k, v] : binding)
        if (k == name) return v;
    auto it = fixed.find(name);
    if (it != fixed.end()) return it->second;
    if (fallback) return *fallback;
    throw UsageError("search: missing parameter '" + name + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

FunctionExpr build_kernel_expr(const std::string& family, const Binding& binding,
                               const std::map<std::string, double>& fixed) {
    if (family == "scaled-t")
        return FunctionExpr::parse(fmt(lookup(binding, fixed, "c")) + "*t");
    if (family == "power-t")
        return FunctionExpr::parse("t^" + fmt(lookup(binding, fixed, "c")));
    if (family == "identity" || family.empty()) return FunctionExpr::variable("t");
    if (family == "inverse-t") return FunctionExpr::parse("1/t");
    throw UsageError("search: unknown kernel family '" + family + "'");
}

// Shift a candidate up so its sampled minimum sits at zero; keeps the
// function families inside the nonnegativity precondition.
FunctionExpr shift_nonnegative(const FunctionExpr& f, double lo, double hi) {
    double min_v = std::numeric_limits<double>::infinity();
    for (double x : linspace(lo, hi, 1025)) min_v = std::min(min_v, f(x));
    if (min_v >= 0.0) return f;
    return f + FunctionExpr::constant(-min_v + 1e-9 * (1.0 + std::fabs(min_v)));
}

FunctionExpr build_function(const std::string& family, const Binding& binding,
                            const std::map<std::string, double>& fixed, double lo, double hi) {
    if (family == "cubic" || family.empty()) {
        FunctionExpr x = FunctionExpr::variable("x");
        FunctionExpr f = FunctionExpr::constant(lookup(binding, fixed, "c3")) * pow(x, 3.0) +
                         FunctionExpr::constant(lookup(binding, fixed, "c2")) * pow(x, 2.0) +
                         FunctionExpr::constant(lookup(binding, fixed, "c1")) * x +
                         FunctionExpr::constant(lookup(binding, fixed, "c0"));
        return shift_nonnegative(f, lo, hi);
    }
    if (family == "exp-affine") {
        double alpha = lookup(binding, fixed, "alpha");
        double beta = lookup(binding, fixed, "beta");
        double gamma = lookup(binding, fixed, "gamma");
        if (alpha < 0.0 || gamma < 0.0)
            throw UsageError("exp-affine family requires alpha, gamma >= 0");
        return FunctionExpr::parse(fmt(alpha) + "*exp(" + fmt(beta) + "*x)+" + fmt(gamma));
    }
    if (family == "neg-log") {
        if (!(lo > 0.0)) throw UsageError("neg-log family requires a window inside (0, inf)");
        // -ln(x) + c with c chosen so the function is nonnegative on [lo, hi].
        double c = std::log(hi) + 1e-9;
        return FunctionExpr::parse("-ln(x)+" + fmt(c));
    }
    throw UsageError("search: unknown function family '" + family + "'");
}

ClassId parse_class(const std::string& s) {
    if (s == "convex") return ClassId::Convex;
    if (s == "s-convex-2") return ClassId::SConvex2;
    if (s == "h-convex") return ClassId::HConvex;
    if (s == "hs1") return ClassId::Hs1;
    if (s == "hs2" || s.empty()) return ClassId::Hs2;
    throw UsageError("unknown class id '" + s + "'");
}

TrialResult from_verdict(const Verdict& v) {
    TrialResult r;
    if (v.kind == VerdictKind::Inconclusive) {
        r.inconclusive = true;
        r.reason = v.reason;
        return r;
    }
    r.violated = v.kind == VerdictKind::Violated;
    r.slack = -v.max_violation;
    if (v.witness) {
        r.lhs = v.witness->lhs;
        r.rhs = v.witness->rhs;
    }
    return r;
}

IntervalSpec interval_from(const Binding& binding, const std::map<std::string, double>& fixed) {
    double a = lookup(binding, fixed, "a");
    double gap = lookup(binding, fixed, "gap");
    if (!(gap > 0.0)) throw UsageError("interval gap must be positive");
    return {a, a + gap};
}

TrialResult bound_slack(const BoundChainReport& report, bool proof_derived_only) {
    TrialResult r;
    for (const HypothesisFlag& h : report.hypotheses) {
        if (h.status != VerdictKind::Satisfied) {
            r.inconclusive = true;
            r.reason = "hypothesis '" + h.name + "' not satisfied";
            return r;
        }
    }
    if (!std::isfinite(report.lhs)) {
        r.inconclusive = true;
        r.reason = report.notes.empty() ? "claim evaluation inconclusive" : report.notes.back();
        return r;
    }
    r.slack = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const BoundEntry& e : report.bounds) {
        if (proof_derived_only && e.provenance != Provenance::ProofDerived) continue;
        if (e.verdict == BoundVerdict::Inconclusive) {
            r.inconclusive = true;
            r.reason = "bound '" + e.label + "' inconclusive";
            return r;
        }
        any = true;
        if (e.verdict == BoundVerdict::Fails) r.violated = true;
        if (e.slack < r.slack) {
            r.slack = e.slack;
            r.lhs = report.lhs;
            r.rhs = e.value;
        }
    }
    if (!any) {
        r.inconclusive = true;
        r.reason = "no bound with the requested provenance";
        return r;
    }
    return r;
}

}  // namespace

Binding draw_binding(const ClaimSpec& spec, std::uint64_t trial) {
    Rng rng = Rng::for_trial(spec.seed, trial);
    Binding binding;
    binding.reserve(spec.ranges.size());
    for (const ParamRange& r : spec.ranges) binding.emplace_back(r.name, rng.next_in(r.lo, r.hi));
    return binding;
}

TrialResult evaluate_claim(const ClaimSpec& spec, const Binding& binding) {
    BoundOptions opt{spec.tol, spec.quad_tol, spec.seed};
    try {
        if (spec.claim == "inclusion" || spec.claim == "compose-condition") {
            HKernel kernel(build_kernel_expr(spec.family, binding, spec.fixed),
                           lookup(binding, spec.fixed, "s", spec.kernel_s));
            auto [tlo, thi] = effective_t_range(kernel);
            std::vector<double> t_grid = linspace(tlo, thi, 33);
            Verdict v;
            if (spec.claim == "inclusion") {
                Observation which = spec.variant == "obs2"   ? Observation::Obs2
                                    : spec.variant == "obs3" ? Observation::Obs3
                                                             : Observation::Obs1;
                v = check_inclusion_condition(kernel, which, t_grid, spec.tol);
            } else {
                ComposeVariant variant = spec.variant == "thm27-eq" ? ComposeVariant::Thm27Eq
                                                                    : ComposeVariant::Thm26Leq;
                v = check_compose_condition(kernel, variant, t_grid, spec.tol);
            }
            return from_verdict(v);
        }

        if (spec.claim == "membership") {
            FunctionExpr f =
                build_function(spec.family, binding, spec.fixed, spec.domain_lo, spec.domain_hi);
            HKernel kernel(FunctionExpr::parse(spec.kernel_h),
                           lookup(binding, spec.fixed, "s", spec.kernel_s));
            auto [tlo, thi] = membership_t_range(kernel);
            SampleGrid grid =
                SampleGrid::uniform(spec.domain_lo, spec.domain_hi, spec.seed, 17, 17, 200, tlo, thi);
            return from_verdict(
                check_membership(f, parse_class(spec.variant), grid, spec.tol, &kernel));
        }

        if (spec.claim == "identity") {
            IntervalSpec iv = interval_from(binding, spec.fixed);
            FunctionExpr f = build_function(spec.family, binding, spec.fixed, iv.a, iv.b);
            Lemma which = spec.variant == "lemma-2.14" ? Lemma::Lemma214 : Lemma::Lemma213;
            BoundChainReport report = verify_identity(f, iv, which, opt);
            TrialResult r;
            if (!std::isfinite(report.lhs) || report.bounds.empty() ||
                report.bounds[0].verdict == BoundVerdict::Inconclusive) {
                r.inconclusive = true;
                r.reason = report.notes.empty() ? "identity inconclusive" : report.notes.back();
                return r;
            }
            double residual = std::fabs(report.lhs - report.bounds[0].value);
            r.slack = -residual;
            r.lhs = report.lhs;
            r.rhs = report.bounds[0].value;
            r.violated = report.bounds[0].verdict == BoundVerdict::Fails;
            return r;
        }

        if (spec.claim == "bound") {
            IntervalSpec iv = interval_from(binding, spec.fixed);
            FunctionExpr f = build_function(spec.family, binding, spec.fixed, iv.a, iv.b);
            HKernel kernel(FunctionExpr::parse(spec.kernel_h),
                           lookup(binding, spec.fixed, "s", spec.kernel_s));
            BoundChainReport report;
            bool proof_only = true;
            if (spec.variant == "theorem-2.9") {
                report = verify_hh_upper(f, kernel, iv, opt);
                proof_only = false;  // the endpoint bound is the claim itself
            } else if (spec.variant == "theorem-2.17") {
                report = verify_holder_bound(f, kernel, iv, lookup(binding, spec.fixed, "p"), opt);
                proof_only = false;  // both routes are valid given the hypothesis
            } else {
                report = verify_trapezoid_bounds(f, kernel, iv, opt);
            }
            return bound_slack(report, proof_only);
        }

        if (spec.claim == "proposition") {
            IntervalSpec iv = interval_from(binding, spec.fixed);
            Proposition which = spec.variant == "3.2"   ? Proposition::P32
                                : spec.variant == "3.3" ? Proposition::P33
                                                        : Proposition::P31;
            std::optional<double> p;
            std::optional<int> n;
            if (which != Proposition::P32) p = lookup(binding, spec.fixed, "p");
            if (which == Proposition::P33)
                n = static_cast<int>(lookup(binding, spec.fixed, "n"));
            BoundChainReport report = check_proposition(which, iv.a, iv.b, p, n, opt);
            return bound_slack(report, /*proof_derived_only=*/true);
        }

        throw UsageError("unknown claim '" + spec.claim + "'");
    } catch (const UsageError&) {
        throw;
    } catch (const PreconditionError& e) {
        TrialResult r;
        r.inconclusive = true;
        r.reason = std::string("precondition failed: ") + e.what();
        return r;
    } catch (const std::runtime_error& e) {
        TrialResult r;
        r.inconclusive = true;
        r.reason = e.what();
        return r;
    }
}

SearchReport search_counterexample(const ClaimSpec& spec) {
    if (spec.budget < 1) throw UsageError("search budget must be >= 1");
    for (const ParamRange& r : spec.ranges)
        if (!(r.lo <= r.hi)) throw UsageError("malformed range for '" + r.name + "'");

    SearchReport report;
    report.claim = spec.claim;
    report.variant = spec.variant;
    report.family = spec.family;
    report.seed = spec.seed;
    report.min_slack = std::numeric_limits<double>::infinity();

    for (long i = 0; i < spec.budget; ++i) {
        Binding binding = draw_binding(spec, static_cast<std::uint64_t>(i));
        TrialResult result = evaluate_claim(spec, binding);
        ++report.trials;
        if (result.inconclusive) {
            ++report.inconclusive;
            continue;
        }
        ++report.slack_histogram[static_cast<std::size_t>(slack_bin(result.slack))];
        if (result.violated) ++report.violations;
        if (result.slack < report.min_slack) {
            report.min_slack = result.slack;
            report.worst_witness = binding;
            report.worst_result = result;
        }
    }
    if (!report.worst_witness) report.min_slack = 0.0;
    return report;
}

}  // namespace hsconvex
