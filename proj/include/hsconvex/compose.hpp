#pragma once

#include <span>
#include <string>
#include <vector>

#include "hsconvex/membership.hpp"

namespace hsconvex {

enum class InnerKind { Linear, Convex, Unrestricted };

struct CompositionSpec {
    FunctionExpr outer;
    FunctionExpr inner;
    int power = 1;  // self-composition depth; > 1 requires inner == outer
    InnerKind inner_kind = InnerKind::Unrestricted;
};

enum class ComposeVariant { Thm26Leq, Thm27Eq };

/// The closure claims the tool knows how to check. Each names the class the
/// composition lands in and the hypotheses verified by sampling beforehand.
enum class ClosureTheorem { T21, T22, T23, T24, T26, T27 };

const char* closure_theorem_name(ClosureTheorem t);
/// Class the composition is claimed to belong to (hs1 or hs2).
ClassId closure_target_class(ClosureTheorem t);

/// Pointwise kernel self-composition condition on a t-grid:
///   Thm26Leq: h^s(h^s(t)) <= h^s(t)
///   Thm27Eq:  h^s(h^s(t)) == h^s(t) (within tol)
/// Inconclusive when h^s(t) falls outside h's domain at some grid t.
Verdict check_compose_condition(const HKernel& kernel, ComposeVariant variant,
                                std::span<const double> t_grid, double tol = 1e-9);

struct HypothesisReport {
    std::string name;
    VerdictKind status;
    std::string detail;
};

struct ComposeReport {
    ClosureTheorem theorem;
    Verdict membership;  // verdict for f∘g in the target class
    std::vector<HypothesisReport> hypotheses;
    std::vector<std::string> notes;
};

/// Builds F = f∘g (iterated `power` times when inner == outer), verifies the
/// chosen theorem's hypotheses by sampling, then tests F's membership in the
/// target class on the grid. Throws HypothesisNotMet when a verified
/// hypothesis fails outright.
ComposeReport compose_and_check(const CompositionSpec& spec, const HKernel& kernel,
                                ClosureTheorem theorem, const SampleGrid& grid,
                                double tol = 1e-9);

/// Verdicts for f, f∘f, ..., f^max_power (max_power capped at 5). A power
/// whose inner iterate escapes the sampled domain window is Inconclusive,
/// as are all higher powers.
std::vector<Verdict> self_composition_powers(const FunctionExpr& f, const HKernel& kernel,
                                             ClassId cls, int max_power, const SampleGrid& grid,
                                             double tol = 1e-9);

// Sampled hypothesis primitives, exposed for reuse and direct testing.
Verdict sampled_linearity(const FunctionExpr& g, const SampleGrid& grid, double tol);
Verdict sampled_convexity(const FunctionExpr& g, const SampleGrid& grid, double tol);
/// Pairwise monotone-nondecreasing check over the sorted sample points
/// (exact, no tolerance).
Verdict sampled_increasing(const FunctionExpr& f, const SampleGrid& grid);
/// Checks g(x) >= 0 over the sampled window, i.e. g feeds the outer
/// function's domain [0, inf).
Verdict sampled_range_nonnegative(const FunctionExpr& g, const SampleGrid& grid);

}  // namespace hsconvex
