#include <gtest/gtest.h>

#include <random>

#include "kup/bracket.hpp"
#include "kup/hkr.hpp"
#include "kup/surgery.hpp"
#include "oracles.hpp"

using namespace kup;

namespace {

HopfAlgebra group_alg(const std::string& spec, Field f = Field::rational()) {
    HopfAlgebra h = build_group_algebra(group_from_spec(spec), f);
    ensure_integrals(h);
    return h;
}

struct DoubleCase {
    HopfAlgebra h;
    DoubleAlgebra dd;
    RibbonData rd;
    explicit DoubleCase(const std::string& spec) : h(group_alg(spec)), dd(drinfeld_double(h)), rd(make_ribbon(dd)) {}
};

const DoubleCase& z2() {
    static const DoubleCase s("cyclic:2");
    return s;
}
const DoubleCase& z3() {
    static const DoubleCase s("cyclic:3");
    return s;
}

}  // namespace

TEST(Ribbon, DrinfeldElementIsARibbonWithUnitIntegral) {
    for (const DoubleCase* s : {&z2(), &z3()}) {
        EXPECT_TRUE(s->rd.report.ok()) << s->rd.report.str();
        EXPECT_TRUE(s->rd.mu_v.is_one());
        EXPECT_TRUE(s->rd.mu_v_inv.is_one());
    }
}

TEST(Ribbon, DoubledUFailsCounit) {
    const DoubleCase& s = z2();
    Vec v = s.dd.u;
    for (auto& x : v) x *= Scalar(2L);
    Report r = check_ribbon(s.rd.q, v);
    EXPECT_FALSE(r.passed("eps(v) = 1"));
}

TEST(HkrBracket, EmptyLinkIsOne) {
    EXPECT_EQ(hkr_bracket({0, {}, {}}, z2().rd).value.str(), "1");
}

TEST(HkrBracket, UnknotFramingZero) {
    // no crossings: lambda_D(1) = eps(e) mu(1) = |G|
    EXPECT_EQ(hkr_bracket({1, {}, {0}}, z2().rd).value.str(), "2");
}

TEST(HkrBracket, UnknotFramingOne) {
    EXPECT_EQ(hkr_bracket({1, {}, {1}}, z2().rd).value, z2().rd.mu_v);
    EXPECT_EQ(hkr_bracket({1, {}, {1}}, z3().rd).value.str(), "1");
}

TEST(HkrBracket, DecorationsTwoPerCrossing) {
    HkrBracket b = hkr_bracket({3, {1, -2, 1, -2}, {0}}, z2().rd);
    ASSERT_EQ(b.decorations.size(), 1u);
    EXPECT_EQ(b.decorations[0].size(), 8u);
    for (const auto& d : b.decorations[0]) EXPECT_EQ(d.winding % 2, 0);
}

TEST(HkrInvariant, UnknotValues) {
    EXPECT_EQ(hkr_invariant({1, {}, {0}}, z3().rd).value.str(), "3");
    EXPECT_EQ(hkr_invariant({1, {}, {0}}, z3().rd).value,
              kuperberg(surgery_all(from_planar_link({1, {}, {0}})), z3().h));
    HkrResult m = hkr_invariant({1, {}, {-1}}, z2().rd);
    EXPECT_EQ(m.value.str(), "1");
    EXPECT_EQ(m.components, 1u);
    EXPECT_EQ(m.signature, -1);
    Diagram s3 = surgery_all(from_planar_link({1, {}, {-1}}));
    EXPECT_EQ(oracle::hom_count(s3, cyclic_group(2)), 1);
}

TEST(HkrInvariant, HopfLinkEqualsRegularBracket) {
    const DoubleCase& s = z2();
    const PlanarLink hopf{2, {1, 1}, {0, 0}};
    HkrResult r = hkr_invariant(hopf, s.rd);
    EXPECT_EQ(r.value, bracket(from_planar_link(hopf), s.h, make_regular_rep(s.dd)));
    EXPECT_EQ(r.components, 2u);
    EXPECT_EQ(r.signature, 0);
}

TEST(HkrInvariant, NeedsUnitIntegralOfV) {
    RibbonData rd = z2().rd;
    rd.mu_v = Scalar(2L);
    try {
        hkr_invariant({1, {}, {0}}, rd);
        FAIL() << "expected NormalizationUnavailable";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NormalizationUnavailable);
    }
}

TEST(HkrInvariant, BraidConjugationAndBasePoint) {
    for (const DoubleCase* s : {&z2(), &z3()}) {
        // figure-eight knot and a cyclic rotation of its word
        const Scalar a = hkr_bracket({3, {1, -2, 1, -2}, {0}}, s->rd).value;
        EXPECT_EQ(hkr_bracket({3, {-2, 1, -2, 1}, {0}}, s->rd).value, a);
        EXPECT_EQ(hkr_bracket({3, {-2, 1, -2, 1}, {0}}, s->rd).value,
                  kuperberg(surgery_all(from_planar_link({3, {-2, 1, -2, 1}, {0}})), s->h));
        // conjugation by sigma_1 and by sigma_2
        const Scalar t = hkr_bracket({3, {1, 1, 1, 2}, {1}}, s->rd).value;
        EXPECT_EQ(hkr_bracket({3, {1, 1, 1, 1, 2, -1}, {1}}, s->rd).value, t);
        EXPECT_EQ(hkr_bracket({3, {2, 1, 1, 1, 2, -2}, {1}}, s->rd).value, t);
    }
}

TEST(HkrInvariant, MarkovStabilizationAtFixedFraming) {
    for (const DoubleCase* s : {&z2(), &z3()}) {
        for (int f : {-1, 0, 1}) {
            const Scalar a = hkr_bracket({2, {1, 1, 1}, {f}}, s->rd).value;
            EXPECT_EQ(hkr_bracket({3, {1, 1, 1, 2}, {f}}, s->rd).value, a) << f;
            EXPECT_EQ(hkr_bracket({3, {1, 1, 1, -2}, {f}}, s->rd).value, a) << f;
        }
    }
}

TEST(Signature, ListedExamples) {
    EXPECT_EQ(signature({{1, 0}, {0, -1}}), 0);
    EXPECT_EQ(signature({{0, 1}, {1, 0}}), 0);
    EXPECT_EQ(signature({{2, 1}, {1, 2}}), 2);
    EXPECT_EQ(signature({}), 0);
    EXPECT_EQ(signature({{0, 0}, {0, 0}}), 0);
    try {
        signature({{0, 1}, {2, 0}});
        FAIL() << "expected NotSymmetric";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSymmetric);
    }
}

TEST(Signature, AgreesWithSturmOnRandomMatrices) {
    std::mt19937 rng(2024);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 1 + rng() % 6;
        auto m = oracle::random_symmetric(rng, n, -5, 5);
        if (k % 4 == 0)
            for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;  // exercise the hyperbolic rule
        ASSERT_EQ(signature(m), oracle::sturm_signature(m)) << "case " << k;
    }
}
