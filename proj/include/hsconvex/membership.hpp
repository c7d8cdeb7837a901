#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsconvex/expr.hpp"
#include "hsconvex/kernel.hpp"

namespace hsconvex {

/// Deterministic sample set: evenly spaced grid points plus seeded
/// pseudo-random triples. The same seed always reproduces the same samples.
struct SampleGrid {
    std::vector<double> x_points;  // all >= 0; the classes live on [0, inf)
    std::vector<double> t_points;  // within [0, 1]
    std::uint64_t seed = 0;
    int random_count = 1000;

    /// Evenly spaced default grid: nx x-points on [lo, hi], nt t-points on
    /// [t_lo, t_hi], plus `random_count` seeded random triples.
    static SampleGrid uniform(double lo, double hi, std::uint64_t seed = 0, int nx = 33,
                              int nt = 33, int random_count = 1000, double t_lo = 0.0,
                              double t_hi = 1.0);

    double lo() const;
    double hi() const;
    double t_lo() const;
    double t_hi() const;
};

enum class ClassId { Convex, SConvex2, HConvex, Hs1, Hs2 };

const char* class_id_name(ClassId id);

struct Witness {
    double x, y, t;
    double lhs, rhs;
};

enum class VerdictKind { Satisfied, Violated, Inconclusive };

const char* verdict_kind_name(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    /// Largest lhs - rhs seen over the samples (negative when the inequality
    /// held strictly everywhere). Meaningless for Inconclusive.
    double max_violation = 0.0;
    std::optional<Witness> witness;  // worst sample; present iff Violated
    long samples_checked = 0;
    std::string reason;  // Inconclusive cause or annotation
};

/// Sampled membership test of f in one of the five convexity classes.
///
/// Checks first that f is nonnegative at every sampled domain point
/// (throws PreconditionError otherwise), then evaluates
/// lhs = f(t*x + (1-t)*y) against the class's weighted right-hand side at
/// every sampled (x, y, t). Satisfied when lhs - rhs <= tol everywhere;
/// Violated carries the worst witness (ties broken by lexicographic
/// (x, y, t)). Kernel evaluation failures at up to 1% of t-samples are
/// skipped; beyond that the verdict is Inconclusive.
///
/// `kernel` is required for HConvex/Hs1/Hs2; `s_override` supplies the
/// exponent for SConvex2 when no kernel is given.
Verdict check_membership(const FunctionExpr& f, ClassId cls, const SampleGrid& grid,
                         double tol = 1e-9, const HKernel* kernel = nullptr,
                         std::optional<double> s_override = std::nullopt);

enum class Observation { Obs1, Obs2, Obs3 };

const char* observation_name(Observation o);

/// Pointwise check of the class-inclusion condition on a t-grid:
///   Obs1: h^s(t) >= t      (convex functions are (h-s)2-convex)
///   Obs2: h(t)   >= t      (s-convex functions are (h-s)2-convex)
///   Obs3: h(t)^(s-1) >= 1 and h(t) > 0   (h-convex functions are (h-s)2-convex)
/// Kernel domain failures make the verdict Inconclusive.
Verdict check_inclusion_condition(const HKernel& kernel, Observation which,
                                  std::span<const double> t_grid, double tol = 1e-9);

struct CrossCheckResult {
    Verdict base;       // membership in the observation's base class
    Verdict condition;  // the pointwise kernel condition
    Verdict hs2;        // membership in the (h-s)2 class
    bool implication_tested = false;  // base and condition both Satisfied
    bool implication_holds = false;   // tested and hs2 Satisfied
};

/// Verifies one inclusion observation end to end: base-class membership,
/// the kernel condition, and the implied (h-s)2 membership on the same grid.
CrossCheckResult cross_check_inclusion(const FunctionExpr& f, const HKernel& kernel,
                                       Observation which, const SampleGrid& grid,
                                       double tol = 1e-9);

/// t-points usable for pointwise kernel checks: [0, 1] shrunk by the
/// kernel's eval-epsilon on any endpoint where h^s is not finite.
std::pair<double, double> effective_t_range(const HKernel& kernel);

/// As effective_t_range, but symmetric: membership checks evaluate both
/// h^s(t) and h^s(1-t), so a singularity at either endpoint shrinks both.
std::pair<double, double> membership_t_range(const HKernel& kernel);

}  // namespace hsconvex
