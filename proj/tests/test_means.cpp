#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsconvex/means.hpp"
#include "hsconvex/rng.hpp"

using namespace hsconvex;

namespace {

const BoundEntry& find_bound(const BoundChainReport& r, const std::string& label) {
    for (const BoundEntry& e : r.bounds)
        if (e.label == label) return e;
    REQUIRE_MESSAGE(false, "missing bound ", label);
    static BoundEntry dummy;
    return dummy;
}

double extra(const BoundChainReport& r, const std::string& name) {
    for (const auto& [k, v] : r.extras)
        if (k == name) return v;
    REQUIRE_MESSAGE(false, "missing extra ", name);
    return 0.0;
}

}  // namespace

TEST_CASE("closed-form means") {
    CHECK(mean(MeanKind::Arithmetic, 1.0, 2.0) == 1.5);
    CHECK(mean(MeanKind::Harmonic, 1.0, 2.0) == doctest::Approx(4.0 / 3.0));
    CHECK(mean(MeanKind::Logarithmic, 1.0, 2.0) == doctest::Approx(1.0 / std::log(2.0)));
    CHECK(mean(MeanKind::Power, 1.0, 2.0, 2.0) == doctest::Approx(std::sqrt(2.5)));
    // negative order computed straight from the definition
    CHECK(mean(MeanKind::Power, 1.0, 2.0, -4.0) ==
          doctest::Approx(std::pow((1.0 + std::pow(2.0, -4.0)) / 2.0, -0.25)));
    // order-1 generalized log mean collapses to the arithmetic mean
    CHECK(mean(MeanKind::GeneralizedLog, 1.0, 2.0, 1.0) == doctest::Approx(1.5));
    CHECK(mean(MeanKind::GeneralizedLog, 1.0, 2.0, 2.0) ==
          doctest::Approx(std::sqrt(7.0 / 3.0)));
}

TEST_CASE("mean domain validation") {
    CHECK_THROWS_AS(mean(MeanKind::Harmonic, 0.0, 2.0), MeanDomainError);
    CHECK_THROWS_AS(mean(MeanKind::Logarithmic, -1.0, 2.0), MeanDomainError);
    CHECK_THROWS_AS(mean(MeanKind::Logarithmic, 2.0, 2.0), MeanDomainError);
    CHECK_THROWS_AS(mean(MeanKind::Power, 1.0, 2.0, 0.0), MeanDomainError);
    CHECK_THROWS_AS(mean(MeanKind::GeneralizedLog, 1.0, 2.0, 0.5), MeanDomainError);
}

TEST_CASE("means are exactly symmetric") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        double a = rng.next_in(0.01, 5.0), b = rng.next_in(0.01, 5.0);
        CHECK(mean(MeanKind::Arithmetic, a, b) == mean(MeanKind::Arithmetic, b, a));
        CHECK(mean(MeanKind::Harmonic, a, b) == mean(MeanKind::Harmonic, b, a));
        if (a != b)
            CHECK(mean(MeanKind::Logarithmic, a, b) == mean(MeanKind::Logarithmic, b, a));
        CHECK(mean(MeanKind::Power, a, b, 3.0) == mean(MeanKind::Power, b, a, 3.0));
    }
}

TEST_CASE("mean ordering H <= L <= A, strict for a < b") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        double a = rng.next_in(0.01, 4.0);
        double b = a + rng.next_in(0.01, 4.0);
        double H = mean(MeanKind::Harmonic, a, b);
        double L = mean(MeanKind::Logarithmic, a, b);
        double A = mean(MeanKind::Arithmetic, a, b);
        CHECK(H < L);
        CHECK(L < A);
    }
}

TEST_CASE("power means are nondecreasing in the order") {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        double a = rng.next_in(0.1, 3.0);
        double b = a + rng.next_in(0.01, 3.0);
        double prev = -1.0;
        for (double p : {-4.0, -1.0, 1.0, 2.0, 4.0}) {
            double v = mean(MeanKind::Power, a, b, p);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("proposition 3.2 point values") {
    BoundChainReport r = check_proposition(Proposition::P32, 1.0, 2.0, std::nullopt,
                                           std::nullopt);
    // |1/L - 1/H| = |ln 2 - 3/4|
    CHECK(r.lhs == doctest::Approx(std::fabs(std::log(2.0) - 0.75)).epsilon(1e-12));
    const BoundEntry& paper = find_bound(r, "rhs-stated");
    CHECK(paper.value == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
    CHECK(paper.verdict == BoundVerdict::Holds);
    // corollary substitution: (b-a)(1/a^2 + 1/b^2)/8 = (1)(1 + 1/4)/8
    const BoundEntry& derived = find_bound(r, "rhs-corollary-2.16-substitution");
    CHECK(derived.value == doctest::Approx(1.25 / 8.0).epsilon(1e-12));
    CHECK(derived.verdict == BoundVerdict::Holds);
    // the quadrature oracle agrees with the closed form
    CHECK(std::fabs(extra(r, "oracle-lhs") - r.lhs) <= 1e-8);
}

TEST_CASE("proposition 3.2 degenerate interval: slack collapses to zero") {
    BoundChainReport r = check_proposition(Proposition::P32, 1.0, 1.0 + 1e-4, std::nullopt,
                                           std::nullopt);
    CHECK(r.lhs <= 1e-8);
    const BoundEntry& paper = find_bound(r, "rhs-stated");
    CHECK(paper.slack >= 0.0);
    CHECK(paper.value <= 1e-4);
    CHECK(paper.verdict == BoundVerdict::Holds);
}

TEST_CASE("proposition 3.1 point values at (1, 2), p = 2") {
    BoundChainReport r = check_proposition(Proposition::P31, 1.0, 2.0, 2.0, std::nullopt);
    CHECK(r.lhs == doctest::Approx(0.056852819440054714).epsilon(1e-12));
    // stated bound: (b-a) / (2^((3p-2)/p) (p+1)^(1/p)) * A_{2p/(1-p)}(a,b)^2
    double a4 = mean(MeanKind::Power, 1.0, 2.0, -4.0);
    double stated = 1.0 / (4.0 * std::sqrt(3.0)) * a4 * a4;
    const BoundEntry& paper = find_bound(r, "rhs-stated");
    CHECK(paper.value == doctest::Approx(stated).epsilon(1e-12));
    CHECK(paper.value == doctest::Approx(0.198).epsilon(1e-3));
    CHECK(paper.verdict == BoundVerdict::Holds);
    const BoundEntry& derived = find_bound(r, "rhs-theorem-2.17-substitution");
    CHECK(derived.verdict == BoundVerdict::Holds);
    CHECK(std::fabs(extra(r, "oracle-lhs") - r.lhs) <= 1e-8);
}

TEST_CASE("proposition 3.3 hand values") {
    // n = 2: the derivation-implied lhs is exactly zero (quadratic defect)
    BoundChainReport r2 = check_proposition(Proposition::P33, 1.0, 2.0, 2.0, 2);
    CHECK(std::fabs(r2.lhs) <= 1e-12);
    CHECK(std::fabs(extra(r2, "oracle-lhs")) <= 1e-9);
    // but the stated L_n form differs from zero
    CHECK(extra(r2, "lhs-stated-Ln-form") > 0.01);

    // n = 3: lhs = (b-a)^2 / 2
    BoundChainReport r3 = check_proposition(Proposition::P33, 1.0, 2.0, 2.0, 3);
    CHECK(r3.lhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(extra(r3, "oracle-lhs") - 0.5) <= 1e-8);
    for (const char* label : {"rhs-stated", "rhs-theorem-2.17-substitution"}) {
        const BoundEntry& e = find_bound(r3, label);
        CHECK(std::isfinite(e.value));
    }
    CHECK(find_bound(r3, "rhs-theorem-2.17-substitution").verdict == BoundVerdict::Holds);
}

TEST_CASE("proposition preconditions") {
    CHECK_THROWS_AS(check_proposition(Proposition::P31, 1.0, 2.0, std::nullopt, std::nullopt),
                    UsageError);
    CHECK_THROWS_AS(check_proposition(Proposition::P31, 1.0, 2.0, 1.0, std::nullopt),
                    UsageError);
    CHECK_THROWS_AS(check_proposition(Proposition::P33, 1.0, 2.0, 2.0, 1), UsageError);
    CHECK_THROWS_AS(check_proposition(Proposition::P32, 0.0, 2.0, std::nullopt, std::nullopt),
                    UsageError);
    CHECK_THROWS_AS(check_proposition(Proposition::P32, 2.0, 1.0, std::nullopt, std::nullopt),
                    UsageError);
}

TEST_CASE("oracle agreement across a parameter sweep") {
    for (double a : {0.5, 1.0, 2.0}) {
        for (double gap : {0.1, 0.5, 1.0, 2.0}) {
            BoundChainReport r32 =
                check_proposition(Proposition::P32, a, a + gap, std::nullopt, std::nullopt);
            CHECK(std::fabs(extra(r32, "oracle-lhs") - r32.lhs) <= 1e-8);
            CHECK(find_bound(r32, "rhs-stated").verdict == BoundVerdict::Holds);

            BoundChainReport r31 = check_proposition(Proposition::P31, a, a + gap, 2.0,
                                                     std::nullopt);
            CHECK(std::fabs(extra(r31, "oracle-lhs") - r31.lhs) <= 1e-8);

            BoundChainReport r33 = check_proposition(Proposition::P33, a, a + gap, 3.0, 3);
            CHECK(std::fabs(extra(r33, "oracle-lhs") - r33.lhs) <= 1e-8);
        }
    }
}
