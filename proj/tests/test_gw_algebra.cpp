#include "gwpt/expr.hpp"
#include "gwpt/gw_algebra.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gwpt;

namespace {

class Gw : public ::testing::Test {
protected:
    RingPtr R = make_p3();
    GwElement G(const std::string& s) const { return parse_gw(s, R); }
    CohClass c(const std::string& l) const { return (*R)(l); }
};

}  // namespace

TEST_F(Gw, Generators)
{
    EXPECT_TRUE(GwElement::a(0, c("H")).is_zero());
    EXPECT_TRUE(GwElement::a(-1, c("H")).is_zero());
    EXPECT_THROW(GwElement::a(-2, c("H")), std::invalid_argument);
    EXPECT_THROW(GwElement::tau(-3, c("H")), std::invalid_argument);
    const GwElement sq = G("tau(0,p)^2");
    ASSERT_EQ(sq.terms().size(), 1u);
    EXPECT_EQ(sq.terms().begin()->first.size(), 2u);
    EXPECT_EQ(G("tau(-2,p)*tau(3,H)"), G("tau(3,H)*tau(-2,p)"));
}

TEST_F(Gw, Dictionary)
{
    EXPECT_EQ(tau_to_a(G("tau(1,L)")), G("1/2*w*a(2,L) - 4*a(1,p)"));
    // (1/24) int H c2 = 1/4
    EXPECT_EQ(tau_to_a(G("tau(0,H)"), A1Shift::todd), G("a(1,H) + 1/4"));
    EXPECT_EQ(tau_to_a(G("tau(0,H)"), A1Shift::none), G("a(1,H)"));
}

TEST_F(Gw, DictionaryRowA5)
{
    // u^4 a_5(gamma)/5 = 24tau_4 + 50c1 tau_3 + 35c1^2 tau_2 + 10c1^3 tau_1 + c1^4 tau_0, u^4 = w^4
    // gamma = H: c1 H = 4L, c1^2 H = 16p
    const GwElement lhs = a_to_tau(G("w^4*1/5*a(5,H)"));
    const GwElement rhs = G("24*tau(4,H) + 200*tau(3,L) + 560*tau(2,p)");
    EXPECT_EQ(lhs, rhs);
}

TEST_F(Gw, RoundTrip)
{
    for (const char* s : {"a(3,L)", "a(2,H)*a(1,p)", "w^-1*a(4,H) + a(1,L)^2", "tau(-2,p)*a(3,H)"}) {
        const GwElement x = G(s);
        EXPECT_EQ(tau_to_a(a_to_tau(x)), x) << s;
        EXPECT_EQ(tau_to_a(a_to_tau(x, A1Shift::none), A1Shift::none), x) << s;
    }
    EXPECT_THROW(tau_to_a(G("tau(2,one)")), std::domain_error);
}

TEST_F(Gw, RandomRoundTrip)
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> lvl(0, 5), cls(1, 3), coef(-3, 3);
    for (int i = 0; i < 40; ++i) {
        GwElement x(R);
        for (int t = 0; t < 3; ++t) {
            GwElement m = GwElement::constant(R, WScalar(coef(rng)));
            for (int f = 0; f < 2; ++f) m = m * GwElement::tau(lvl(rng), R->basis(static_cast<size_t>(cls(rng))));
            x += m;
        }
        EXPECT_EQ(a_to_tau(tau_to_a(x)), x);
    }
}

TEST_F(Gw, Rkj)
{
    // [3]^2_0 = e_3(3,4,5) = 60
    EXPECT_EQ(apply_Rkj(2, 0, G("tau(2,L)")), G("60*tau(4,L)"));
    // R^1_0 tau_k(gamma) = tau_{k-1}(gamma c1)
    EXPECT_EQ(apply_Rkj(0, 1, G("tau(3,H)")), G("4*tau(2,L)"));
    EXPECT_EQ(apply_Rkj(-1, 0, G("tau(0,H)")), G("tau(-1,H)"));
    EXPECT_EQ(apply_Rk_gw(-1, G("tau(0,H)")), G("tau(-1,H)"));
    EXPECT_THROW(apply_Rkj(1, 0, G("a(2,H)")), std::invalid_argument);
}

TEST_F(Gw, Bk)
{
    EXPECT_TRUE(apply_Bk(1, G("tau(0,L)^2")).is_zero());
    // int L H c1 = 4 int L H^2 = 0 on P3
    EXPECT_TRUE(apply_Bk(1, G("tau(0,L)*tau(0,H)")).is_zero());
    EXPECT_EQ(apply_Bk(1, G("tau(0,L)*tau(0,one)")), G("4"));
    EXPECT_EQ(apply_Bk(0, G("tau(0,H)*tau(0,L)")), G("1"));
    EXPECT_TRUE(apply_Bk(0, G("tau(1,H)*tau(0,L)")).is_zero());
}

TEST_F(Gw, Tk)
{
    EXPECT_EQ(build_T0(R, 0), G("2*tau(0,one)*tau(-1,p)"));
    for (int k = -1; k <= 2; ++k)
        EXPECT_EQ(restrict_negatives(tau_to_a(build_Tprime_tau(R, k), A1Shift::none), RestrictMode::vacuum),
                  restrict_negatives(build_Tprime_compact(R, k), RestrictMode::vacuum))
            << k;
}

TEST_F(Gw, Virasoro)
{
    // -tau_0(c1) - (1/24) int c1 c2 once the negative symbols act on the vacuum
    EXPECT_EQ(restrict_negatives(apply_gw_virasoro(0, G("1"), GwVirasoroKind::Ltilde), RestrictMode::vacuum),
              G("-4*tau(0,H) - 1"));
    EXPECT_TRUE(apply_gw_virasoro(-1, G("1"), GwVirasoroKind::Ltilde).is_zero());
    // the delta term appears only at k = 0
    for (int k : {1, 2, 3}) {
        const GwElement v = apply_gw_virasoro(k, G("1"), GwVirasoroKind::Ltilde);
        EXPECT_EQ(v.coeff({}), WScalar()) << k;
    }
}

TEST_F(Gw, Restrictions)
{
    const GwElement M = G("tau(3,H)*tau(1,L)");
    EXPECT_EQ(restrict_negatives(G("tau(-2,p)") * M, RestrictMode::low), M);
    EXPECT_TRUE(restrict_negatives(G("tau(-1,p)") * M, RestrictMode::low).is_zero());
    EXPECT_TRUE(restrict_negatives(G("tau(-1,L)") * M, RestrictMode::high).is_zero());
    EXPECT_EQ(restrict_negatives(G("tau(-1,H)") * M, RestrictMode::high), G("tau(-1,H)") * M);
    EXPECT_EQ(restrict_negatives(G("tau(-2,L)") * M, RestrictMode::vacuum), WScalar::u_pow(-2) * M * WScalar(0));
    EXPECT_EQ(restrict_negatives(G("tau(-2,p)") * M, RestrictMode::vacuum), WScalar::u_pow(-2) * M);
}

TEST_F(Gw, Stationary)
{
    EXPECT_TRUE(is_stationary(G("tau(2,H)*a(1,p)")));
    EXPECT_FALSE(is_stationary(G("tau(2,one)")));
}
