#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hsconvex/membership.hpp"

namespace hsconvex {

struct IntervalSpec {
    double a, b;  // 0 <= a < b
};

enum class Provenance { PaperStated, ProofDerived };
const char* provenance_name(Provenance p);

enum class BoundVerdict { Holds, Fails, Inconclusive };
const char* bound_verdict_name(BoundVerdict v);

struct BoundEntry {
    std::string label;
    Provenance provenance;
    double value = 0.0;
    double slack = 0.0;  // value - lhs, reported even when negative
    BoundVerdict verdict = BoundVerdict::Inconclusive;
};

struct HypothesisFlag {
    std::string name;
    VerdictKind status;
    std::string detail;
};

/// One checked claim: a left-hand side, one or more labeled right-hand
/// sides with provenance, per-bound verdicts, and the quadrature error that
/// entered the comparison. Identity claims use a two-sided rule
/// (|lhs - value| <= tol + quadrature_error); bound claims hold when
/// slack >= -(tol + quadrature_error).
struct BoundChainReport {
    std::string claim_id;
    double lhs = 0.0;
    std::vector<BoundEntry> bounds;
    double quadrature_error = 0.0;
    std::vector<HypothesisFlag> hypotheses;
    std::vector<std::pair<std::string, double>> extras;  // named intermediate values
    std::vector<std::string> notes;
};

enum class Lemma { Lemma213, Lemma214 };

struct BoundOptions {
    double tol = 1e-9;        // slack tolerance for verdicts
    double quad_tol = 1e-10;  // tolerance handed to the quadrature engine
    std::uint64_t seed = 0;   // seed for sampled hypothesis checks
};

/// Integral identities for twice differentiable F:
///   Lemma213: (F'(a)+F'(b))/2 - (1/(b-a)) int F'  ==  ((b-a)/2) int_0^1 (1-2t) F''(ta+(1-t)b) dt
///   Lemma214: (F(a)+F(b))/2  - (1/(b-a)) int F   ==  ((b-a)^2/2) int_0^1 (t-t^2) F''(ta+(1-t)b) dt
/// Both sides are computed by quadrature; the verdict holds when they agree
/// within tol plus the combined quadrature error.
BoundChainReport verify_identity(const FunctionExpr& F, IntervalSpec iv, Lemma which,
                                 const BoundOptions& opt = {});

/// Upper endpoint-average bound for nonnegative F:
///   (1/(b-a)) int_a^b F <= K * (F(a) + F(b))
/// Emits the closed form (F(a)+F(b))/(s+1) as a cross-check when h(t) = t.
/// The (h-s)2 membership of F is sampled and reported as a hypothesis flag.
BoundChainReport verify_hh_upper(const FunctionExpr& F, const HKernel& kernel, IntervalSpec iv,
                                 const BoundOptions& opt = {});

/// Trapezoid-defect bounds for F with |F''| sampled (h-s)2-convex:
///   lhs = |(F'(a)+F'(b))/2 - (1/(b-a)) int F'|
/// against the tight kernel-weighted bound, the stated final bound, the
/// asymmetric bound from the derivation's last step, and (when h(t)=t, s=1)
/// both closed forms of the eighth-rule corollary.
BoundChainReport verify_trapezoid_bounds(const FunctionExpr& F, const HKernel& kernel,
                                         IntervalSpec iv, const BoundOptions& opt = {});

/// Holder-split bound (p > 1, q = p/(p-1)) for F with |F''|^q sampled
/// (h-s)2-convex:
///   lhs <= ((b-a) / (2 (p+1)^(1/p))) * [K (|F''(a)|^q + |F''(b)|^q)]^(1/q)
/// The 1/(p+1) factor is also obtained by quadrature of int |1-2t|^p and
/// cross-checked against the closed form.
BoundChainReport verify_holder_bound(const FunctionExpr& F, const HKernel& kernel,
                                     IntervalSpec iv, double p, const BoundOptions& opt = {});

/// The shared left-hand side |(F'(a)+F'(b))/2 - (1/(b-a)) int F'|, with the
/// scaled quadrature error of the integral. Exposed for the special-means
/// oracle.
std::pair<double, double> trapezoid_defect_lhs(const FunctionExpr& F, IntervalSpec iv,
                                               const BoundOptions& opt = {});

}  // namespace hsconvex
