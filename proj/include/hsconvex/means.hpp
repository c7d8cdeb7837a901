#pragma once

#include <optional>

#include "hsconvex/bounds.hpp"

namespace hsconvex {

enum class MeanKind { Arithmetic, Harmonic, Logarithmic, Power, GeneralizedLog };

/// Closed-form special means. Arguments are sorted internally, so every
/// mean is exactly symmetric. `order` is the exponent p for Power
/// (nonzero) and n for GeneralizedLog (>= 1); it is ignored otherwise.
/// Throws MeanDomainError on per-kind domain violations.
double mean(MeanKind kind, double a, double b, double order = 0.0);

enum class Proposition { P31, P32, P33 };
const char* proposition_name(Proposition p);

/// Evaluates one special-means inequality at (a, b):
///   P31 (needs p > 1): |1/L - 1/H| against the stated power-mean bound and
///        against direct substitution of F(x) = -ln(x), h(t) = t, s = 1 into
///        the Holder-split bound.
///   P32: |1/L - 1/H| against the stated (b^2-a^2)/(8ab) and against the
///        eighth-rule corollary's second-derivative form.
///   P33 (needs p > 1, n >= 2): the endpoint-power-mean defect of F(x) = x^n
///        against the stated bound and the substituted Holder-split bound.
///
/// The closed-form left side is cross-checked against a quadrature oracle
/// (the trapezoid-defect lhs of the underlying F); disagreement beyond
/// tol + quadrature error makes every verdict Inconclusive. Both
/// paper-stated and derivation-substituted right sides are always emitted
/// with provenance labels; no adjudication between them is attempted.
BoundChainReport check_proposition(Proposition which, double a, double b,
                                   std::optional<double> p, std::optional<int> n,
                                   const BoundOptions& opt = {});

}  // namespace hsconvex
