#include "hsconvex/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hsconvex/bounds.hpp"
#include "hsconvex/compose.hpp"
#include "hsconvex/means.hpp"
#include "hsconvex/membership.hpp"
#include "hsconvex/quadrature.hpp"
#include "hsconvex/report.hpp"
#include "hsconvex/rng.hpp"
#include "hsconvex/search.hpp"

namespace hsconvex {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

// Worst-verdict aggregation; violated dominates inconclusive.
struct Outcome {
    bool violated = false;
    bool inconclusive = false;

    void add(VerdictKind k) {
        if (k == VerdictKind::Violated) violated = true;
        if (k == VerdictKind::Inconclusive) inconclusive = true;
    }
    void add(BoundVerdict v) {
        if (v == BoundVerdict::Fails) violated = true;
        if (v == BoundVerdict::Inconclusive) inconclusive = true;
    }
    int exit_code() const {
        if (violated) return kExitViolated;
        if (inconclusive) return kExitInconclusive;
        return kExitOk;
    }
    const char* overall() const {
        if (violated) return "violated";
        if (inconclusive) return "inconclusive";
        return "satisfied";
    }
};

struct CommonFlags {
    std::string format = "table";
    double tol = 1e-9;
    double quad_tol = 1e-10;
    std::uint64_t seed = 0;
    std::string out_path;
};

ordered_json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    ordered_json j;
    j["x"] = json_number(w->x);
    j["y"] = json_number(w->y);
    j["t"] = json_number(w->t);
    j["lhs"] = json_number(w->lhs);
    j["rhs"] = json_number(w->rhs);
    return j;
}

ordered_json verdict_json(const std::string& claim, const Verdict& v) {
    ordered_json j;
    j["claim"] = claim;
    j["verdict"] = verdict_kind_name(v.kind);
    j["max_violation"] = json_number(v.max_violation);
    j["samples_checked"] = v.samples_checked;
    j["witness"] = witness_json(v.witness);
    if (v.kind == VerdictKind::Inconclusive || !v.reason.empty()) j["reason"] = v.reason;
    return j;
}

void add_verdict_row(ReportDoc& doc, const std::string& claim, const std::string& item,
                     const Verdict& v) {
    std::string lhs, rhs;
    if (v.witness) {
        lhs = format_number(v.witness->lhs);
        rhs = format_number(v.witness->rhs);
    }
    doc.rows.push_back({claim, item, "", lhs, rhs, format_number(-v.max_violation),
                        verdict_kind_name(v.kind), v.reason});
}

ordered_json bound_report_json(const BoundChainReport& r) {
    ordered_json j;
    j["claim"] = r.claim_id;
    j["lhs"] = json_number(r.lhs);
    j["quadrature_error"] = json_number(r.quadrature_error);
    ordered_json hyp = ordered_json::array();
    for (const HypothesisFlag& h : r.hypotheses) {
        ordered_json e;
        e["name"] = h.name;
        e["status"] = verdict_kind_name(h.status);
        e["detail"] = h.detail;
        hyp.push_back(e);
    }
    j["hypotheses"] = hyp;
    ordered_json bounds = ordered_json::array();
    for (const BoundEntry& e : r.bounds) {
        ordered_json b;
        b["label"] = e.label;
        b["provenance"] = provenance_name(e.provenance);
        b["value"] = json_number(e.value);
        b["slack"] = json_number(e.slack);
        b["verdict"] = bound_verdict_name(e.verdict);
        bounds.push_back(b);
    }
    j["bounds"] = bounds;
    ordered_json extras;
    for (const auto& [k, v] : r.extras) extras[k] = json_number(v);
    j["extras"] = extras;
    ordered_json notes = ordered_json::array();
    for (const std::string& n : r.notes) notes.push_back(n);
    j["notes"] = notes;
    return j;
}

void add_bound_rows(ReportDoc& doc, const BoundChainReport& r, Outcome& outcome) {
    for (const BoundEntry& e : r.bounds) {
        outcome.add(e.verdict);
        doc.rows.push_back({r.claim_id, e.label, provenance_name(e.provenance),
                            format_number(r.lhs), format_number(e.value), format_number(e.slack),
                            bound_verdict_name(e.verdict),
                            r.notes.empty() ? "" : r.notes.front()});
    }
}

FunctionExpr parse_expr_flag(const std::string& text, const char* flag) {
    try {
        return FunctionExpr::parse(text);
    } catch (const SyntaxError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    } catch (const MultipleVariablesError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    // lo:hi:count
    double lo, hi;
    int count;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1 ||
        !(lo <= hi))
        throw UsageError("bad grid spec '" + spec + "' (expected lo:hi:count)");
    return linspace(lo, hi, count);
}

SampleGrid make_grid(double lo, double hi, std::uint64_t seed, const HKernel* kernel) {
    double tlo = 0.0, thi = 1.0;
    if (kernel) {
        auto [l, h] = membership_t_range(*kernel);
        tlo = l;
        thi = h;
    }
    return SampleGrid::uniform(lo, hi, seed, 33, 33, 1000, tlo, thi);
}

// ---- command handlers -------------------------------------------------

struct Ctx {
    const CommonFlags& flags;
    ReportDoc& doc;
    Outcome& outcome;
};

void cmd_parse(Ctx ctx, const std::string& expr_text) {
    FunctionExpr f = parse_expr_flag(expr_text, "--expr");
    FunctionExpr d1 = f.derivative();
    FunctionExpr d2 = d1.derivative();
    ordered_json j;
    j["claim"] = "parse";
    j["input"] = expr_text;
    j["printed"] = f.str();
    j["variable"] = f.variable_name();
    j["derivative"] = d1.str();
    j["second_derivative"] = d2.str();
    ctx.doc.json["results"].push_back(j);
    ctx.doc.rows.push_back({"parse", "expr", "", "", "", "", "satisfied", f.str()});
}

void cmd_integrate(Ctx ctx, const std::string& f_text, double a, double b,
                   const std::vector<double>& kinks, long budget) {
    FunctionExpr f = parse_expr_flag(f_text, "--f");
    QuadOptions q{ctx.flags.quad_tol, budget};
    ordered_json j;
    j["claim"] = "integrate";
    try {
        QuadResult r = kinks.empty()
                           ? integrate([&](double x) { return f(x); }, a, b, q)
                           : integrate_kink_aware([&](double x) { return f(x); }, a, b, kinks, q);
        j["value"] = json_number(r.value);
        j["error_estimate"] = json_number(r.error_estimate);
        j["evaluations"] = r.evaluations;
        j["converged"] = r.converged;
        if (!r.converged) ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.rows.push_back({"integrate", "value", "", "", format_number(r.value),
                                format_number(r.error_estimate),
                                r.converged ? "satisfied" : "inconclusive", ""});
    } catch (const QuadratureDivergence& e) {
        j["verdict"] = "inconclusive";
        j["reason"] = e.what();
        ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.rows.push_back({"integrate", "value", "", "", "", "", "inconclusive", e.what()});
    } catch (const EvalError& e) {
        j["verdict"] = "inconclusive";
        j["reason"] = e.what();
        ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.rows.push_back({"integrate", "value", "", "", "", "", "inconclusive", e.what()});
    }
    ctx.doc.json["results"].push_back(j);
}

void cmd_kconst(Ctx ctx, const std::string& h_text, double s) {
    HKernel kernel(parse_expr_flag(h_text, "--h"), s);
    ordered_json j;
    j["claim"] = "kconst";
    try {
        QuadResult r = kernel.k_constant(ctx.flags.quad_tol);
        j["K"] = json_number(r.value);
        j["error_estimate"] = json_number(r.error_estimate);
        j["evaluations"] = r.evaluations;
        j["converged"] = r.converged;
        if (kernel.h_is_identity()) j["closed_form_1_over_s_plus_1"] = json_number(1.0 / (s + 1.0));
        if (!r.converged) ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.rows.push_back({"kconst", "K", "", "", format_number(r.value),
                                format_number(r.error_estimate),
                                r.converged ? "satisfied" : "inconclusive", ""});
    } catch (const QuadratureDivergence& e) {
        j["verdict"] = "inconclusive";
        j["reason"] = e.what();
        ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.rows.push_back({"kconst", "K", "", "", "", "", "inconclusive", e.what()});
    }
    ctx.doc.json["results"].push_back(j);
}

ClassId parse_class_flag(const std::string& s) {
    if (s == "convex") return ClassId::Convex;
    if (s == "s-convex-2") return ClassId::SConvex2;
    if (s == "h-convex") return ClassId::HConvex;
    if (s == "hs1") return ClassId::Hs1;
    if (s == "hs2") return ClassId::Hs2;
    throw UsageError("unknown class '" + s + "'");
}

void cmd_membership(Ctx ctx, const std::string& f_text, const std::string& cls_text,
                    const std::string& h_text, std::optional<double> s, double lo, double hi) {
    FunctionExpr f = parse_expr_flag(f_text, "--f");
    ClassId cls = parse_class_flag(cls_text);
    const bool needs_kernel =
        cls == ClassId::HConvex || cls == ClassId::Hs1 || cls == ClassId::Hs2;
    std::optional<HKernel> kernel;
    if (needs_kernel) {
        if (h_text.empty() || !s) throw UsageError("this class requires --h and --s");
        kernel.emplace(parse_expr_flag(h_text, "--h"), *s);
    } else if (cls == ClassId::SConvex2 && !s) {
        throw UsageError("class s-convex-2 requires --s");
    }
    SampleGrid grid = make_grid(lo, hi, ctx.flags.seed, kernel ? &*kernel : nullptr);
    std::string claim = std::string("membership-") + class_id_name(cls);
    try {
        Verdict v = check_membership(f, cls, grid, ctx.flags.tol, kernel ? &*kernel : nullptr, s);
        ctx.outcome.add(v.kind);
        ctx.doc.json["results"].push_back(verdict_json(claim, v));
        add_verdict_row(ctx.doc, claim, "verdict", v);
    } catch (const PreconditionError& e) {
        ordered_json j;
        j["claim"] = claim;
        j["verdict"] = "inconclusive";
        j["error"] = "precondition-negative-function";
        j["at_x"] = json_number(e.x());
        j["reason"] = e.what();
        ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.json["results"].push_back(j);
        ctx.doc.rows.push_back({claim, "precondition", "", "", "", "", "inconclusive", e.what()});
    }
}

Observation parse_observation(const std::string& s) {
    if (s == "obs1") return Observation::Obs1;
    if (s == "obs2") return Observation::Obs2;
    if (s == "obs3") return Observation::Obs3;
    throw UsageError("unknown observation '" + s + "' (expected obs1|obs2|obs3)");
}

void cmd_inclusion(Ctx ctx, const std::string& which_text, const std::string& h_text, double s,
                   const std::string& f_text, double lo, double hi) {
    Observation which = parse_observation(which_text);
    HKernel kernel(parse_expr_flag(h_text, "--h"), s);
    auto [tlo, thi] = effective_t_range(kernel);
    std::string claim = std::string("inclusion-") + observation_name(which);

    if (f_text.empty()) {
        Verdict v = check_inclusion_condition(kernel, which, linspace(tlo, thi, 33),
                                              ctx.flags.tol);
        ctx.outcome.add(v.kind);
        ctx.doc.json["results"].push_back(verdict_json(claim + "-condition", v));
        add_verdict_row(ctx.doc, claim, "condition", v);
        return;
    }

    FunctionExpr f = parse_expr_flag(f_text, "--f");
    SampleGrid grid = make_grid(lo, hi, ctx.flags.seed, &kernel);
    try {
        CrossCheckResult r = cross_check_inclusion(f, kernel, which, grid, ctx.flags.tol);
        ordered_json j;
        j["claim"] = claim;
        j["base"] = verdict_json("base-class", r.base);
        j["condition"] = verdict_json("condition", r.condition);
        j["hs2"] = verdict_json("hs2-membership", r.hs2);
        j["implication_tested"] = r.implication_tested;
        j["implication_holds"] = r.implication_holds;
        ctx.doc.json["results"].push_back(j);
        add_verdict_row(ctx.doc, claim, "base-class", r.base);
        add_verdict_row(ctx.doc, claim, "condition", r.condition);
        add_verdict_row(ctx.doc, claim, "hs2-membership", r.hs2);
        ctx.outcome.add(r.hs2.kind);
        if (r.implication_tested && !r.implication_holds) ctx.outcome.add(VerdictKind::Violated);
    } catch (const PreconditionError& e) {
        ordered_json j;
        j["claim"] = claim;
        j["verdict"] = "inconclusive";
        j["error"] = "precondition-negative-function";
        j["reason"] = e.what();
        ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.json["results"].push_back(j);
        ctx.doc.rows.push_back({claim, "precondition", "", "", "", "", "inconclusive", e.what()});
    }
}

ClosureTheorem parse_theorem_flag(const std::string& s) {
    if (s == "2.1") return ClosureTheorem::T21;
    if (s == "2.2") return ClosureTheorem::T22;
    if (s == "2.3") return ClosureTheorem::T23;
    if (s == "2.4") return ClosureTheorem::T24;
    if (s == "2.6") return ClosureTheorem::T26;
    if (s == "2.7") return ClosureTheorem::T27;
    throw UsageError("unknown theorem '" + s + "' (expected 2.1|2.2|2.3|2.4|2.6|2.7)");
}

InnerKind parse_inner_kind(const std::string& s) {
    if (s == "linear") return InnerKind::Linear;
    if (s == "convex") return InnerKind::Convex;
    if (s == "unrestricted" || s.empty()) return InnerKind::Unrestricted;
    throw UsageError("unknown inner kind '" + s + "'");
}

void cmd_compose(Ctx ctx, const std::string& f_text, const std::string& g_text,
                 const std::string& theorem_text, const std::string& h_text, double s, int power,
                 const std::string& inner_kind_text, double lo, double hi) {
    ClosureTheorem theorem = parse_theorem_flag(theorem_text);
    HKernel kernel(parse_expr_flag(h_text, "--h"), s);
    FunctionExpr f = parse_expr_flag(f_text, "--f");
    FunctionExpr g = g_text.empty() ? f : parse_expr_flag(g_text, "--g");
    SampleGrid grid = make_grid(lo, hi, ctx.flags.seed, &kernel);
    std::string claim = closure_theorem_name(theorem);

    if (power > 1) {
        if (!g_text.empty() && !(g == f))
            throw UsageError("--power > 1 requires --g to be omitted or equal to --f");
        std::vector<Verdict> verdicts = self_composition_powers(
            f, kernel, closure_target_class(theorem), power, grid, ctx.flags.tol);
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            std::string item = "power-" + std::to_string(i + 1);
            arr.push_back(verdict_json(item, verdicts[i]));
            add_verdict_row(ctx.doc, claim, item, verdicts[i]);
            ctx.outcome.add(verdicts[i].kind);
        }
        ordered_json j;
        j["claim"] = claim + std::string("-self-composition");
        j["powers"] = arr;
        ctx.doc.json["results"].push_back(j);
        return;
    }

    CompositionSpec spec{f, g, 1, parse_inner_kind(inner_kind_text)};
    try {
        ComposeReport r = compose_and_check(spec, kernel, theorem, grid, ctx.flags.tol);
        ordered_json j;
        j["claim"] = claim;
        ordered_json hyp = ordered_json::array();
        for (const HypothesisReport& h : r.hypotheses) {
            ordered_json e;
            e["name"] = h.name;
            e["status"] = verdict_kind_name(h.status);
            e["detail"] = h.detail;
            hyp.push_back(e);
        }
        j["hypotheses"] = hyp;
        j["membership"] = verdict_json("composition-membership", r.membership);
        ordered_json notes = ordered_json::array();
        for (const std::string& n : r.notes) notes.push_back(n);
        j["notes"] = notes;
        ctx.doc.json["results"].push_back(j);
        add_verdict_row(ctx.doc, claim, "composition-membership", r.membership);
        ctx.outcome.add(r.membership.kind);
    } catch (const HypothesisNotMet& e) {
        ordered_json j;
        j["claim"] = claim;
        j["verdict"] = "inconclusive";
        j["error"] = "hypothesis-not-met";
        j["hypothesis"] = e.hypothesis();
        j["reason"] = e.what();
        ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.json["results"].push_back(j);
        ctx.doc.rows.push_back(
            {claim, e.hypothesis(), "", "", "", "", "inconclusive", e.what()});
    } catch (const PreconditionError& e) {
        ordered_json j;
        j["claim"] = claim;
        j["verdict"] = "inconclusive";
        j["error"] = "precondition-negative-function";
        j["reason"] = e.what();
        ctx.outcome.add(VerdictKind::Inconclusive);
        ctx.doc.json["results"].push_back(j);
        ctx.doc.rows.push_back({claim, "precondition", "", "", "", "", "inconclusive", e.what()});
    }
}

void cmd_identity(Ctx ctx, const std::string& lemma_text, const std::string& F_text, double a,
                  double b) {
    Lemma which;
    if (lemma_text == "2.13")
        which = Lemma::Lemma213;
    else if (lemma_text == "2.14")
        which = Lemma::Lemma214;
    else
        throw UsageError("unknown lemma '" + lemma_text + "' (expected 2.13|2.14)");
    FunctionExpr F = parse_expr_flag(F_text, "--F");
    BoundOptions opt{ctx.flags.tol, ctx.flags.quad_tol, ctx.flags.seed};
    BoundChainReport r = verify_identity(F, {a, b}, which, opt);
    ctx.doc.json["results"].push_back(bound_report_json(r));
    add_bound_rows(ctx.doc, r, ctx.outcome);
}

void cmd_bound(Ctx ctx, const std::string& theorem_text, const std::string& F_text, double a,
               double b, const std::string& h_text, std::optional<double> s,
               std::optional<double> p) {
    FunctionExpr F = parse_expr_flag(F_text, "--F");
    BoundOptions opt{ctx.flags.tol, ctx.flags.quad_tol, ctx.flags.seed};
    IntervalSpec iv{a, b};

    BoundChainReport r;
    if (theorem_text == "2.16") {
        if ((!h_text.empty() && h_text != "t") || (s && *s != 1.0))
            throw UsageError("theorem 2.16 fixes h(t)=t, s=1; omit --h/--s or pass those values");
        HKernel kernel(FunctionExpr::variable("t"), 1.0);
        r = verify_trapezoid_bounds(F, kernel, iv, opt);
        r.claim_id = "corollary-2.16";
    } else {
        if (h_text.empty() || !s) throw UsageError("--h and --s are required for this theorem");
        HKernel kernel(parse_expr_flag(h_text, "--h"), *s);
        if (theorem_text == "2.9") {
            try {
                r = verify_hh_upper(F, kernel, iv, opt);
            } catch (const PreconditionError& e) {
                ordered_json j;
                j["claim"] = "theorem-2.9";
                j["verdict"] = "inconclusive";
                j["error"] = "precondition-negative-function";
                j["at_x"] = json_number(e.x());
                j["reason"] = e.what();
                ctx.outcome.add(VerdictKind::Inconclusive);
                ctx.doc.json["results"].push_back(j);
                ctx.doc.rows.push_back(
                    {"theorem-2.9", "precondition", "", "", "", "", "inconclusive", e.what()});
                return;
            }
        } else if (theorem_text == "2.15") {
            r = verify_trapezoid_bounds(F, kernel, iv, opt);
        } else if (theorem_text == "2.17") {
            if (!p) throw UsageError("theorem 2.17 requires --p");
            r = verify_holder_bound(F, kernel, iv, *p, opt);
        } else {
            throw UsageError("unknown theorem '" + theorem_text +
                             "' (expected 2.9|2.15|2.16|2.17)");
        }
    }
    ctx.doc.json["results"].push_back(bound_report_json(r));
    add_bound_rows(ctx.doc, r, ctx.outcome);
}

MeanKind parse_mean_kind(const std::string& s) {
    if (s == "A" || s == "arithmetic") return MeanKind::Arithmetic;
    if (s == "H" || s == "harmonic") return MeanKind::Harmonic;
    if (s == "L" || s == "logarithmic") return MeanKind::Logarithmic;
    if (s == "Ap" || s == "power") return MeanKind::Power;
    if (s == "Ln" || s == "genlog") return MeanKind::GeneralizedLog;
    throw UsageError("unknown mean kind '" + s + "' (expected A|H|L|Ap|Ln)");
}

void cmd_means(Ctx ctx, const std::string& kind_text, double a, double b,
               std::optional<double> p, std::optional<int> n) {
    MeanKind kind = parse_mean_kind(kind_text);
    double order = 0.0;
    if (kind == MeanKind::Power) {
        if (!p) throw UsageError("power mean requires --p");
        order = *p;
    } else if (kind == MeanKind::GeneralizedLog) {
        if (!n) throw UsageError("generalized log mean requires --n");
        order = static_cast<double>(*n);
    }
    double value = mean(kind, a, b, order);
    ordered_json j;
    j["claim"] = "mean";
    j["kind"] = kind_text;
    j["a"] = json_number(a);
    j["b"] = json_number(b);
    if (p) j["p"] = json_number(*p);
    if (n) j["n"] = *n;
    j["value"] = json_number(value);
    ctx.doc.json["results"].push_back(j);
    ctx.doc.rows.push_back(
        {"mean", kind_text, "", "", format_number(value), "", "satisfied", ""});
}

Proposition parse_proposition(const std::string& s) {
    if (s == "3.1") return Proposition::P31;
    if (s == "3.2") return Proposition::P32;
    if (s == "3.3" || s == "2.3") return Proposition::P33;  // 2.3 is the printed label
    throw UsageError("unknown proposition '" + s + "' (expected 3.1|3.2|3.3)");
}

void cmd_proposition(Ctx ctx, const std::string& which_text, std::optional<double> a,
                     std::optional<double> b, const std::string& a_grid,
                     const std::string& gap_grid, std::optional<double> p,
                     std::optional<int> n) {
    Proposition which = parse_proposition(which_text);
    BoundOptions opt{ctx.flags.tol, ctx.flags.quad_tol, ctx.flags.seed};

    std::vector<std::pair<double, double>> points;
    if (!a_grid.empty() || !gap_grid.empty()) {
        if (a_grid.empty() || gap_grid.empty())
            throw UsageError("grid mode requires both --a-grid and --gap-grid");
        for (double av : parse_grid_spec(a_grid))
            for (double gap : parse_grid_spec(gap_grid)) points.emplace_back(av, av + gap);
    } else {
        if (!a || !b) throw UsageError("provide --a/--b or --a-grid/--gap-grid");
        points.emplace_back(*a, *b);
    }

    for (auto [av, bv] : points) {
        BoundChainReport r = check_proposition(which, av, bv, p, n, opt);
        ctx.doc.json["results"].push_back(bound_report_json(r));
        add_bound_rows(ctx.doc, r, ctx.outcome);
    }
}

void apply_search_defaults(ClaimSpec& spec) {
    auto ensure_range = [&](const char* name, double lo, double hi) {
        for (const ParamRange& r : spec.ranges)
            if (r.name == name) return;
        if (spec.fixed.count(name)) return;
        spec.ranges.push_back({name, lo, hi});
    };
    if (spec.claim == "inclusion" || spec.claim == "compose-condition") {
        if (spec.variant.empty())
            spec.variant = spec.claim == "inclusion" ? "obs1" : "thm26-leq";
        if (spec.family.empty()) spec.family = "scaled-t";
        if (spec.family == "scaled-t") ensure_range("c", 0.1, 0.9);
        if (spec.family == "power-t") ensure_range("c", 0.25, 4.0);
    } else if (spec.claim == "membership") {
        if (spec.variant.empty()) spec.variant = "hs2";
        if (spec.family.empty()) spec.family = "cubic";
    } else if (spec.claim == "identity" || spec.claim == "bound") {
        if (spec.variant.empty())
            spec.variant = spec.claim == "identity" ? "lemma-2.13" : "theorem-2.15";
        if (spec.family.empty()) spec.family = "cubic";
        ensure_range("a", 0.0, 1.0);
        ensure_range("gap", 0.5, 1.5);
        if (spec.variant == "theorem-2.17") ensure_range("p", 1.5, 4.0);
    } else if (spec.claim == "proposition") {
        if (spec.variant.empty()) spec.variant = "3.2";
        ensure_range("a", 0.5, 2.0);
        ensure_range("gap", 0.1, 2.0);
        if (spec.variant != "3.2") ensure_range("p", 1.5, 4.0);
        if (spec.variant == "3.3" && !spec.fixed.count("n")) spec.fixed["n"] = 3.0;
    }
    if (spec.family == "cubic")
        for (const char* c : {"c3", "c2", "c1", "c0"}) ensure_range(c, -2.0, 2.0);
    if (spec.family == "exp-affine") {
        ensure_range("alpha", 0.1, 2.0);
        ensure_range("beta", -1.0, 1.0);
        ensure_range("gamma", 0.0, 1.0);
    }
}

void cmd_search(Ctx ctx, ClaimSpec spec, const std::vector<std::string>& range_flags,
                const std::vector<std::string>& fixed_flags) {
    for (const std::string& rf : range_flags) {
        char name[64];
        double lo, hi;
        if (std::sscanf(rf.c_str(), "%63[^=]=%lf:%lf", name, &lo, &hi) != 3)
            throw UsageError("bad --range '" + rf + "' (expected name=lo:hi)");
        spec.ranges.push_back({name, lo, hi});
    }
    for (const std::string& ff : fixed_flags) {
        char name[64];
        double v;
        if (std::sscanf(ff.c_str(), "%63[^=]=%lf", name, &v) != 2)
            throw UsageError("bad --fixed '" + ff + "' (expected name=value)");
        spec.fixed[name] = v;
    }
    apply_search_defaults(spec);

    SearchReport r = search_counterexample(spec);

    ordered_json j;
    j["claim"] = "search-" + r.claim + (r.variant.empty() ? "" : "-" + r.variant);
    j["variant"] = r.variant;
    j["family"] = r.family;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["inconclusive"] = r.inconclusive;
    j["min_slack"] = json_number(r.min_slack);
    if (r.worst_witness) {
        ordered_json w;
        for (const auto& [k, v] : *r.worst_witness) w[k] = json_number(v);
        j["worst_witness"] = w;
        j["worst_lhs"] = json_number(r.worst_result.lhs);
        j["worst_rhs"] = json_number(r.worst_result.rhs);
    } else {
        j["worst_witness"] = nullptr;
    }
    ordered_json hist = ordered_json::array();
    for (long c : r.slack_histogram) hist.push_back(c);
    j["slack_histogram"] = hist;
    ctx.doc.json["results"].push_back(j);

    if (r.violations > 0)
        ctx.outcome.add(VerdictKind::Violated);
    else if (r.inconclusive == r.trials)
        ctx.outcome.add(VerdictKind::Inconclusive);
    ctx.doc.rows.push_back({j["claim"].get<std::string>(), "summary", "",
                            std::to_string(r.violations) + "/" + std::to_string(r.trials),
                            "", format_number(r.min_slack),
                            r.violations > 0 ? "violated" : "satisfied", ""});
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numerical checks for (h-s)-convexity claims and Hermite-Hadamard style bounds"};
    app.require_subcommand(1);
    // --h names a kernel expression below, so only the long help flag exists.
    app.set_help_flag("--help", "print help");
    auto add_sub = [&app](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print help");
        sub->fallthrough();  // global flags may follow the subcommand
        return sub;
    };

    CommonFlags flags;
    app.add_option("--format", flags.format, "output format: table, json, or csv");
    app.add_option("--tol", flags.tol, "slack tolerance for verdicts");
    app.add_option("--quad-tol", flags.quad_tol, "quadrature tolerance");
    app.add_option("--seed", flags.seed, "seed for sampled grids and searches");
    app.add_option("--out", flags.out_path, "write the report to this file instead of stdout");

    // parse
    auto* c_parse = add_sub("parse", "parse an expression and print its derivatives");
    std::string parse_expr_text;
    c_parse->add_option("--expr", parse_expr_text)->required();

    // integrate
    auto* c_int = add_sub("integrate", "adaptive definite integration");
    std::string int_f;
    double int_a = 0.0, int_b = 1.0;
    std::vector<double> int_kinks;
    long int_budget = 1000000;
    c_int->add_option("--f", int_f)->required();
    c_int->add_option("--a", int_a)->required();
    c_int->add_option("--b", int_b)->required();
    c_int->add_option("--kinks", int_kinks)->delimiter(',');
    c_int->add_option("--budget", int_budget);

    // kconst
    auto* c_k = add_sub("kconst", "kernel constant K = integral of h^s over [0,1]");
    std::string k_h;
    double k_s = 1.0;
    c_k->add_option("--h", k_h)->required();
    c_k->add_option("--s", k_s)->required();

    // membership
    auto* c_mem = add_sub("membership", "sampled convexity-class membership");
    std::string mem_f, mem_class, mem_h;
    std::optional<double> mem_s;
    double mem_lo = 0.0, mem_hi = 1.0;
    c_mem->add_option("--f", mem_f)->required();
    c_mem->add_option("--class", mem_class)->required();
    c_mem->add_option("--h", mem_h);
    c_mem->add_option("--s", mem_s);
    c_mem->add_option("--lo", mem_lo);
    c_mem->add_option("--hi", mem_hi);

    // inclusion
    auto* c_inc = add_sub("inclusion", "class-inclusion conditions and cross-checks");
    std::string inc_which, inc_h, inc_f;
    double inc_s = 1.0, inc_lo = 0.0, inc_hi = 1.0;
    c_inc->add_option("--which", inc_which)->required();
    c_inc->add_option("--h", inc_h)->required();
    c_inc->add_option("--s", inc_s)->required();
    c_inc->add_option("--f", inc_f);
    c_inc->add_option("--lo", inc_lo);
    c_inc->add_option("--hi", inc_hi);

    // compose-check
    auto* c_comp = add_sub("compose-check", "composition-closure checks");
    std::string comp_f, comp_g, comp_theorem, comp_h, comp_inner_kind;
    double comp_s = 1.0, comp_lo = 0.0, comp_hi = 1.0;
    int comp_power = 1;
    c_comp->add_option("--f", comp_f)->required();
    c_comp->add_option("--g", comp_g);
    c_comp->add_option("--theorem", comp_theorem)->required();
    c_comp->add_option("--h", comp_h)->required();
    c_comp->add_option("--s", comp_s)->required();
    c_comp->add_option("--power", comp_power);
    c_comp->add_option("--inner-kind", comp_inner_kind);
    c_comp->add_option("--lo", comp_lo);
    c_comp->add_option("--hi", comp_hi);

    // identity
    auto* c_id = add_sub("identity", "integral identity checks");
    std::string id_lemma, id_F;
    double id_a = 0.0, id_b = 1.0;
    c_id->add_option("--lemma", id_lemma)->required();
    c_id->add_option("--F", id_F)->required();
    c_id->add_option("--a", id_a)->required();
    c_id->add_option("--b", id_b)->required();

    // bound
    auto* c_bound = add_sub("bound", "Hermite-Hadamard style bound reports");
    std::string bound_theorem, bound_F, bound_h;
    std::optional<double> bound_s, bound_p;
    double bound_a = 0.0, bound_b = 1.0;
    c_bound->add_option("--theorem", bound_theorem)->required();
    c_bound->add_option("--F", bound_F)->required();
    c_bound->add_option("--a", bound_a)->required();
    c_bound->add_option("--b", bound_b)->required();
    c_bound->add_option("--h", bound_h);
    c_bound->add_option("--s", bound_s);
    c_bound->add_option("--p", bound_p);

    // means
    auto* c_means = add_sub("means", "closed-form special means");
    std::string means_kind;
    double means_a = 0.0, means_b = 0.0;
    std::optional<double> means_p;
    std::optional<int> means_n;
    c_means->add_option("--kind", means_kind)->required();
    c_means->add_option("--a", means_a)->required();
    c_means->add_option("--b", means_b)->required();
    c_means->add_option("--p", means_p);
    c_means->add_option("--n", means_n);

    // proposition
    auto* c_prop = add_sub("proposition", "special-means inequality checks");
    std::string prop_which, prop_a_grid, prop_gap_grid;
    std::optional<double> prop_a, prop_b, prop_p;
    std::optional<int> prop_n;
    c_prop->add_option("--which", prop_which)->required();
    c_prop->add_option("--a", prop_a);
    c_prop->add_option("--b", prop_b);
    c_prop->add_option("--a-grid", prop_a_grid);
    c_prop->add_option("--gap-grid", prop_gap_grid);
    c_prop->add_option("--p", prop_p);
    c_prop->add_option("--n", prop_n);

    // search
    auto* c_search = add_sub("search", "seeded counterexample search");
    ClaimSpec search_spec;
    std::vector<std::string> search_ranges, search_fixed;
    c_search->add_option("--claim", search_spec.claim)->required();
    c_search->add_option("--variant", search_spec.variant);
    c_search->add_option("--family", search_spec.family);
    c_search->add_option("--budget", search_spec.budget);
    c_search->add_option("--range", search_ranges, "name=lo:hi, repeatable");
    c_search->add_option("--fixed", search_fixed, "name=value, repeatable");
    c_search->add_option("--lo", search_spec.domain_lo);
    c_search->add_option("--hi", search_spec.domain_hi);
    c_search->add_option("--h", search_spec.kernel_h);
    c_search->add_option("--s", search_spec.kernel_s);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help() << std::flush;
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << std::endl;
        return kExitUsage;
    }

    ReportDoc doc;
    Outcome outcome;
    doc.json["command"] = app.get_subcommands().front()->get_name();
    ordered_json config;
    config["format"] = flags.format;
    config["tol"] = json_number(flags.tol);
    config["quad_tol"] = json_number(flags.quad_tol);
    config["seed"] = flags.seed;
    doc.json["config"] = config;
    doc.json["results"] = ordered_json::array();

    Ctx ctx{flags, doc, outcome};
    try {
        Format format = parse_format(flags.format);

        if (c_parse->parsed()) cmd_parse(ctx, parse_expr_text);
        if (c_int->parsed()) cmd_integrate(ctx, int_f, int_a, int_b, int_kinks, int_budget);
        if (c_k->parsed()) cmd_kconst(ctx, k_h, k_s);
        if (c_mem->parsed()) cmd_membership(ctx, mem_f, mem_class, mem_h, mem_s, mem_lo, mem_hi);
        if (c_inc->parsed()) cmd_inclusion(ctx, inc_which, inc_h, inc_s, inc_f, inc_lo, inc_hi);
        if (c_comp->parsed())
            cmd_compose(ctx, comp_f, comp_g, comp_theorem, comp_h, comp_s, comp_power,
                        comp_inner_kind, comp_lo, comp_hi);
        if (c_id->parsed()) cmd_identity(ctx, id_lemma, id_F, id_a, id_b);
        if (c_bound->parsed())
            cmd_bound(ctx, bound_theorem, bound_F, bound_a, bound_b, bound_h, bound_s, bound_p);
        if (c_means->parsed()) cmd_means(ctx, means_kind, means_a, means_b, means_p, means_n);
        if (c_prop->parsed())
            cmd_proposition(ctx, prop_which, prop_a, prop_b, prop_a_grid, prop_gap_grid, prop_p,
                            prop_n);
        if (c_search->parsed()) {
            search_spec.seed = flags.seed;
            search_spec.tol = flags.tol;
            search_spec.quad_tol = flags.quad_tol;
            cmd_search(ctx, search_spec, search_ranges, search_fixed);
        }

        doc.exit_code = outcome.exit_code();
        doc.json["overall"] = outcome.overall();
        doc.json["exit_code"] = doc.exit_code;

        std::string rendered = serialize_report(doc, format);
        if (!flags.out_path.empty()) {
            std::ofstream file(flags.out_path, std::ios::binary);
            if (!file) throw UsageError("cannot open output file '" + flags.out_path + "'");
            file << rendered;
        } else {
            out << rendered << std::flush;
        }
        return doc.exit_code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const SyntaxError& e) {
        err << "usage error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const MultipleVariablesError& e) {
        err << "usage error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const MeanDomainError& e) {
        err << "usage error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << std::endl;
        return kExitInconclusive;
    }
}

}  // namespace hsconvex
