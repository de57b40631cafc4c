#include "gwpt/expr.hpp"
#include "gwpt/pt_algebra.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

using namespace gwpt;

namespace {

class Pt : public ::testing::Test {
protected:
    RingPtr R = make_p3();
    CurveClass beta = p3_line(R);
    PtElement P(const std::string& s) const { return to_ch(parse_pt(s, R)); }
    PtElement T(const std::string& s) const { return to_tch(parse_pt(s, R)); }
};

}  // namespace

TEST_F(Pt, TildeGenerators)
{
    EXPECT_EQ(P("tch(5,p)"), P("ch(5,p)"));
    // H c2 = 6 H L = 6p
    EXPECT_EQ(P("tch(4,H)"), P("ch(4,H) + 1/4*ch(2,p)"));
    EXPECT_EQ(P("tch(5,L)"), P("ch(5,L)"));
    // tch_3(one) = ch_3(one) + (1/24) ch_1(c2)
    EXPECT_EQ(P("tch(3,one)"), P("ch(3,one) + 1/4*ch(1,L)"));
}

TEST_F(Pt, BasisRoundTrip)
{
    for (const char* s : {"ch(4,H)*ch(3,H)*ch(2,L)", "ch(7,one) + 2*ch(3,p)", "ch(5,H)^2 - 1/3*ch(2,L)"}) {
        const PtElement D = P(s);
        EXPECT_EQ(to_ch(to_tch(D)), D) << s;
    }
}

TEST_F(Pt, BuildElement)
{
    const PtElement D = build_element({{PtBasis::ch, 3, (*R)("H")}, {PtBasis::ch, 2, (*R)("L")}});
    EXPECT_EQ(D, P("ch(3,H)*ch(2,L)"));
    // linear in the class
    EXPECT_EQ(build_element({{PtBasis::ch, 4, R->c1()}}), P("4*ch(4,H)"));
    EXPECT_THROW(build_element({{PtBasis::ch, -1, (*R)("H")}}), std::invalid_argument);
}

TEST_F(Pt, Rk)
{
    EXPECT_EQ(apply_Rk(2, P("ch(3,H)*ch(2,L)")), P("6*ch(5,H)*ch(2,L) + 6*ch(3,H)*ch(4,L)"));
    EXPECT_TRUE(apply_Rk(3, P("1")).is_zero());
    EXPECT_EQ(apply_Rk(-1, P("ch(3,p)")), P("ch(2,p)"));
    // R_0 ch_i(gamma) = (i + deg - 3) ch_i(gamma)
    EXPECT_EQ(apply_Rk(0, P("ch(4,H)")), P("2*ch(4,H)"));
    EXPECT_THROW(apply_Rk(-2, P("ch(3,p)")), std::invalid_argument);
}

TEST_F(Pt, RkIsDerivation)
{
    const PtElement a = P("ch(3,H) + ch(4,L)"), b = P("ch(2,p)*ch(5,one)");
    for (int k = -1; k <= 3; ++k) EXPECT_EQ(apply_Rk(k, a * b), apply_Rk(k, a) * b + a * apply_Rk(k, b)) << k;
}

TEST_F(Pt, Tk)
{
    EXPECT_EQ(normalize_low_degree(build_Tk(R, 2, TConvention::calligraphic)),
              P("-8*ch(4,H) + 8*ch(2,H)*ch(2,p) - 2*ch(2,L)^2 - 4*ch(2,p)"));
    EXPECT_EQ(build_Tk(R, -1, TConvention::roman), P("fch1*ch(0,p)"));
    EXPECT_TRUE(build_Tk(R, -1, TConvention::calligraphic).is_zero());
    EXPECT_EQ(to_ch(build_Tk_tilde(R, 2)), build_Tk(R, 2, TConvention::calligraphic));
    EXPECT_THROW(build_Tk(make_p2(), 1, TConvention::roman), std::invalid_argument);
}

TEST_F(Pt, Virasoro)
{
    const PtElement L = apply_virasoro(-1, P("ch(2,p)"), VirasoroKind::Lcal);
    EXPECT_EQ(L, P("ch(1,p) + ch(0,p)*ch(1,p)"));
    EXPECT_TRUE(bracket_normalize(L, beta).is_zero());
    // L_k and Lcal_k differ by the two conventions of T_k and the R_{-1} term
    for (int k = -1; k <= 2; ++k) {
        const PtElement D = P("ch(3,H)*ch(2,L)");
        const PtElement dT = build_Tk(R, k, TConvention::calligraphic) - build_Tk(R, k, TConvention::roman);
        EXPECT_EQ(apply_virasoro(k, D, VirasoroKind::Lcal) - apply_virasoro(k, D, VirasoroKind::L),
                  dT * D + factorial(k + 1) * apply_Rk(-1, P("ch(" + std::to_string(k + 1) + ",p)") * D))
            << k;
    }
}

TEST_F(Pt, Lcal2Simplified)
{
    // after normalization over the line class the operator reduces to
    // -8ch_4(H) + 10ch_2(p) - 2ch_2(L)^2 + R_2 + 6ch_3(p)R_{-1}
    for (const char* s : {"ch(3,H)*ch(2,L)", "ch(5,one)", "ch(4,H)*ch(3,L)", "ch(2,p)"}) {
        const PtElement D = P(s);
        const PtElement want = P("-8*ch(4,H) + 10*ch(2,p) - 2*ch(2,L)^2") * D + apply_Rk(2, D) +
                               P("6*ch(3,p)") * apply_Rk(-1, D);
        EXPECT_EQ(bracket_normalize(apply_virasoro(2, D, VirasoroKind::Lcal), beta), bracket_normalize(want, beta))
            << s;
    }
}

TEST_F(Pt, BracketNormalize)
{
    const PtElement M = P("ch(4,H)*ch(3,L)");
    EXPECT_EQ(bracket_normalize(P("ch(0,p)") * M, beta), -M);
    EXPECT_EQ(bracket_normalize(P("ch(2,H)") * M, beta), M);
    EXPECT_TRUE(bracket_normalize(P("fch1") * M, beta).is_zero());
    EXPECT_TRUE(bracket_normalize(P("ch(1,L)") * M, beta).is_zero());
    EXPECT_EQ(normalize_low_degree(P("ch(2,H)") * M), P("ch(2,H)") * M);
}

TEST_F(Pt, Filtration)
{
    auto level = [&](const std::string& s) { return filtration_level(R, P(s).terms().begin()->first); };
    EXPECT_EQ(level("1"), 0);
    EXPECT_EQ(level("ch(3,H)*ch(2,L)"), 2);
    EXPECT_EQ(level("ch(4,p)^2"), 1);
    EXPECT_EQ(level("ch(3,H)^3"), 3);
    EXPECT_THROW(level("fch1*ch(3,H)"), std::invalid_argument);
}

TEST_F(Pt, Essential)
{
    EXPECT_TRUE(is_essential(T("tch(5,H)")));
    EXPECT_TRUE(is_essential(T("tch(3,H)*tch(4,L)")));
    EXPECT_FALSE(is_essential(T("tch(5,one)")));
}

TEST_F(Pt, FormalSymbols)
{
    const PtElement f = P("fch1*ch(3,H)");
    ASSERT_EQ(f.terms().size(), 1u);
    EXPECT_EQ(fch1_count(f.terms().begin()->first), 1);
    EXPECT_EQ(fch0_count(P("fch0^2").terms().begin()->first), 2);
}
