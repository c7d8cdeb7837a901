#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsconvex/membership.hpp"

namespace hsconvex {

struct ParamRange {
    std::string name;
    double lo, hi;
};

/// One registered claim plus a search space over its parameters. Trials are
/// drawn from a counter-based generator: trial i depends only on (seed, i),
/// so growing the budget extends the stream without disturbing its prefix.
struct ClaimSpec {
    std::string claim;    // membership | inclusion | compose-condition | identity | bound | proposition
    std::string variant;  // class id, obs1..3, thm26-leq/thm27-eq, lemma-2.13/2.14,
                          // theorem-2.9/2.15/2.17, 3.1/3.2/3.3
    std::string family;   // cubic | exp-affine | neg-log (functions); scaled-t | power-t (kernels)
    std::vector<ParamRange> ranges;       // drawn per trial, in order
    std::map<std::string, double> fixed;  // claim-specific fixed bindings
    double domain_lo = 0.0, domain_hi = 1.0;
    std::string kernel_h = "t";
    double kernel_s = 1.0;
    long budget = 100;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    double quad_tol = 1e-10;
};

using Binding = std::vector<std::pair<std::string, double>>;

struct TrialResult {
    bool inconclusive = false;
    bool violated = false;  // per the claim's own verdict rule (tolerance and
                            // quadrature error already accounted for)
    std::string reason;
    double slack = 0.0;           // min over the claim's checked points
    double lhs = 0.0, rhs = 0.0;  // at the claim's worst point
};

/// Fixed histogram bin edges for slack values:
/// (-inf,-1), [-1,-1e-3), [-1e-3,-1e-6), [-1e-6,-1e-9), [-1e-9,0),
/// [0,1e-9), [1e-9,1e-6), [1e-6,1e-3), [1e-3,1), [1,inf).
constexpr int kSlackBins = 10;
int slack_bin(double slack);

struct SearchReport {
    std::string claim, variant, family;
    std::uint64_t seed = 0;
    long trials = 0;
    long violations = 0;
    long inconclusive = 0;  // never counted as violations
    double min_slack = 0.0;
    std::optional<Binding> worst_witness;
    TrialResult worst_result;
    std::array<long, kSlackBins> slack_histogram{};
};

/// Runs spec.budget seeded trials of the claim and reports violation
/// counts, the worst (minimum-slack) witness, and the slack histogram.
/// Deterministic for a fixed spec; violations found under a smaller budget
/// are a prefix of those found under a larger one.
SearchReport search_counterexample(const ClaimSpec& spec);

/// Parameter binding of trial `trial` under the spec's seed.
Binding draw_binding(const ClaimSpec& spec, std::uint64_t trial);

/// Re-evaluates the claim at a specific binding; used for witness replay.
TrialResult evaluate_claim(const ClaimSpec& spec, const Binding& binding);

}  // namespace hsconvex
