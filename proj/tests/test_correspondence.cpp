#include "gwpt/correspondence.hpp"
#include "gwpt/expr.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

using namespace gwpt;

namespace {

class Corr : public ::testing::Test {
protected:
    RingPtr R = make_p3();
    PtElement T(const std::string& s) const { return to_tch(parse_pt(s, R)); }
    GwElement G(const std::string& s) const { return parse_gw(s, R); }
    PtMonomial mono(const std::string& s) const { return T(s).terms().begin()->first; }
};

}  // namespace

TEST_F(Corr, CCircExamples)
{
    EXPECT_EQ(c_circ(R, mono("tch(2,H)")), G("a(1,H)"));
    EXPECT_EQ(c_circ(R, mono("tch(5,L)")), G("1/24*a(4,L) + 1/3*w^-1*a(1,p)^2"));
    EXPECT_EQ(c_circ(R, mono("tch(3,H)^3")), G("3*w^-2*a(2,p)"));
    EXPECT_THROW(c_circ(R, mono("tch(3,one)^2*tch(3,H)^2")), std::domain_error);
}

TEST_F(Corr, CCircStrata)
{
    // three points with all k_i = 1: |k| a_{|k|-1} / prod k_i!
    const auto s = c_circ_strata({1, 1, 1});
    ASSERT_TRUE(s.count(0));
    EXPECT_EQ(s.at(0).at({2}), WScalar::w_pow(-2, 3));
    // one point, k = 3: a_4 / 4! at c1^0
    EXPECT_EQ(c_circ_strata({3}).at(0).at({4}), WScalar(Rational(1, 24)));
    EXPECT_THROW(c_circ_strata({-1}), std::invalid_argument);
}

TEST_F(Corr, CBullet)
{
    EXPECT_EQ(c_bullet(T("1")), G("1"));
    EXPECT_EQ(c_bullet(T("tch(5,L)")), G("w^-3*tau(3,L) + 22/3*w^-3*tau(2,p) + 1/3*w^-1*tau(0,p)^2"));
}

TEST_F(Corr, PointFactorization)
{
    for (const char* d : {"1", "tch(4,H)", "tch(3,H)*tch(4,L)", "tch(5,L) + tch(3,H)^2"}) {
        for (int k = 0; k <= 4; ++k) {
            const PtElement D = T(d);
            const PtElement lhs = T("tch(" + std::to_string(k + 2) + ",p)") * D;
            EXPECT_EQ(c_bullet(lhs), WScalar::w_pow(-k) * G("tau(" + std::to_string(k) + ",p)") * c_bullet(D))
                << d << " k=" << k;
        }
    }
}

TEST_F(Corr, CBulletLinear)
{
    const PtElement a = T("tch(4,H)*tch(3,L)"), b = T("tch(6,H)");
    EXPECT_EQ(c_bullet(a + Rational(3) * b), c_bullet(a) + WScalar(3) * c_bullet(b));
}

TEST_F(Corr, Intertwine)
{
    for (int k : {1, 2, 3, 4}) EXPECT_TRUE(intertwine_check(k, T("1")).ok) << k;
    EXPECT_TRUE(intertwine_check(2, T("tch(5,H)")).ok);
    EXPECT_TRUE(intertwine_check(-1, T("tch(4,L)*tch(3,H)")).ok);
    EXPECT_TRUE(intertwine_check(3, T("tch(3,H)*tch(4,H)*tch(2,p)")).ok);
    EXPECT_THROW(intertwine_check(1, T("tch(5,one)")), std::invalid_argument);
}

TEST_F(Corr, IntertwineKZeroOffByCBullet)
{
    // recorded discrepancy: at k = 0 the difference is exactly C.(D)
    for (const char* d : {"1", "tch(5,L)", "tch(3,H)*tch(4,L)"}) {
        const auto r = intertwine_check(0, T(d));
        EXPECT_FALSE(r.ok) << d;
        EXPECT_EQ(r.difference, c_bullet(T(d))) << d;
    }
}

TEST_F(Corr, GwPredict)
{
    const GwPrediction p = gw_predict(T("tch(5,L)"), p3_line(R));
    EXPECT_EQ(p.d_beta, 4);
    EXPECT_EQ(p.gw_side, WScalar::w_pow(4) * c_bullet(T("tch(5,L)")));
    EXPECT_EQ(p.pt_prefactor, "(-q)^(-4/2)");
    for (int k = 0; k <= 3; ++k) {
        const auto q = gw_predict(T("tch(" + std::to_string(k + 2) + ",p)"), p3_line(R));
        EXPECT_EQ(q.gw_side, WScalar::w_pow(4 - k) * G("tau(" + std::to_string(k) + ",p)"));
    }
}
