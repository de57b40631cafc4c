#include "gwpt/cohomology.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

using namespace gwpt;

namespace {

const char* kP3Json = R"({
  "name": "p3-json",
  "top_degree": 3,
  "basis": [{"label": "one", "degree": 0}, {"label": "H", "degree": 1},
            {"label": "L", "degree": 2}, {"label": "p", "degree": 3}],
  "mult": {"H*H": {"L": 1}, "H*L": {"p": 1}},
  "integral": {"p": 1},
  "c1": {"H": 4},
  "c2": {"L": 6}
})";

}  // namespace

TEST(Cohomology, P3Products)
{
    const RingPtr R = make_p3();
    const CohClass H = (*R)("H"), L = (*R)("L"), p = (*R)("p");
    EXPECT_EQ(R->c1(), H * Rational(4));
    EXPECT_EQ(R->c2(), L * Rational(6));
    EXPECT_EQ(R->c1() * R->c2(), p * Rational(24));
    EXPECT_EQ(H * H, L);
    EXPECT_EQ(H * L, p);
    EXPECT_TRUE((L * L).is_zero());
    EXPECT_EQ(L * R->c1(), p * Rational(4));
    EXPECT_EQ(H.pow(3), p);
    EXPECT_TRUE(H.pow(4).is_zero());
}

TEST(Cohomology, Integrals)
{
    const RingPtr R = make_p3();
    EXPECT_EQ(R->point().integral(), 1);
    EXPECT_EQ(((*R)("H") * (*R)("L")).integral(), 1);
    EXPECT_EQ((R->c1() * R->c2()).integral(), 24);
    EXPECT_EQ((*R)("H").integral(), 0);
    EXPECT_EQ(R->point_index(), R->index("p"));
}

TEST(Cohomology, Kunneth)
{
    const RingPtr R = make_p3();
    auto as_set = [](const std::vector<KunnethTerm>& v) {
        std::vector<std::tuple<int, int, Rational>> out;
        for (const auto& t : v) out.emplace_back(t.left, t.right, t.coeff);
        std::sort(out.begin(), out.end());
        return out;
    };
    const int one = 0, H = 1, L = 2, p = 3;
    using V = std::vector<std::tuple<int, int, Rational>>;
    EXPECT_EQ(as_set(R->kunneth(R->unit())), (V{{one, p, 1}, {H, L, 1}, {L, H, 1}, {p, one, 1}}));
    EXPECT_EQ(as_set(R->kunneth(R->point())), (V{{p, p, 1}}));
    EXPECT_EQ(as_set(R->kunneth(R->c1())), (V{{H, p, 4}, {L, L, 4}, {p, H, 4}}));
}

TEST(Cohomology, DiagonalProperty)
{
    // sum over the Kunneth split of gamma: int(a * left) * right = a * gamma
    for (const RingPtr& R : {make_p3(), make_p2(), make_p1xp1(), product_with_p1(make_p2())}) {
        for (size_t g = 0; g < R->size(); ++g) {
            for (size_t a = 0; a < R->size(); ++a) {
                CohClass acc = R->zero();
                for (const auto& t : R->kunneth(R->basis(g)))
                    acc += R->basis(static_cast<size_t>(t.right)) *
                           ((R->basis(a) * R->basis(static_cast<size_t>(t.left))).integral() * t.coeff);
                EXPECT_EQ(acc, R->basis(a) * R->basis(g)) << R->name() << " g=" << g << " a=" << a;
            }
        }
    }
}

TEST(Cohomology, Duals)
{
    for (const RingPtr& R : {make_p3(), make_p1xp1()})
        for (size_t i = 0; i < R->size(); ++i)
            for (size_t j = 0; j < R->size(); ++j)
                EXPECT_EQ((R->basis(i) * R->dual(j)).integral(), i == j ? 1 : 0);
}

TEST(Cohomology, ProductWithP1)
{
    const RingPtr S = make_p2();
    const RingPtr X = product_with_p1(S);
    EXPECT_EQ(X->top_degree(), 3);
    const CohClass fiber_pt = times_point(X, S->unit());
    CohClass c1S_x1 = X->zero();
    for (size_t i = 0; i < X->size(); ++i)
        if (X->fiber_part(i) == 0) c1S_x1 += X->basis(i) * S->c1()[static_cast<size_t>(X->factor_index(i))];
    EXPECT_EQ(X->c1(), c1S_x1 + fiber_pt * Rational(2));
    // c1 c2 / 24 = (1/12)(c1(S)^2 + c2(S)) x pt
    const CohClass td = X->c1() * X->c2() * Rational(1, 24);
    EXPECT_EQ(td, times_point(X, (S->c1() * S->c1() + S->c2()) * Rational(1, 12)));
    EXPECT_EQ(td.integral(), 1);
    EXPECT_EQ(pushforward_p1(X->c1()), S->unit() * Rational(2));
    for (size_t i = 0; i < S->size(); ++i) {
        EXPECT_EQ(pushforward_p1(times_point(X, S->basis(i))), S->basis(i));
        for (size_t j = 0; j < S->size(); ++j) {
            CohClass s1 = X->zero();
            for (size_t a = 0; a < X->size(); ++a)
                if (X->fiber_part(a) == 0 && X->factor_index(a) == static_cast<int>(i)) s1 = X->basis(a);
            EXPECT_EQ((s1 * times_point(X, S->basis(j))).integral(), (S->basis(i) * S->basis(j)).integral());
        }
    }
}

TEST(Cohomology, JsonRing)
{
    const RingPtr J = ring_from_json_text(kP3Json);
    EXPECT_EQ(J->name(), "p3-json");
    EXPECT_EQ(J->c1() * J->c2(), J->point() * Rational(24));
    EXPECT_EQ((*J)("H").pow(3), (*J)("p"));
    EXPECT_EQ(J->kunneth(J->unit()).size(), 4u);
}

TEST(Cohomology, JsonRingErrors)
{
    // H*H must land in degree 2
    std::string bad = kP3Json;
    bad.replace(bad.find("\"H*H\": {\"L\": 1}"), 15, "\"H*H\": {\"p\": 1}");
    EXPECT_THROW(ring_from_json_text(bad), std::exception);
    // degenerate pairing
    std::string degenerate = kP3Json;
    degenerate.replace(degenerate.find("\"H*L\": {\"p\": 1}"), 15, "\"H*L\": {\"p\": 0}");
    EXPECT_THROW(ring_from_json_text(degenerate), std::exception);
    EXPECT_THROW(ring_from_json_text("{"), std::exception);
    EXPECT_THROW(ring_by_name("no-such-ring.json"), std::exception);
}

TEST(Cohomology, Presets)
{
    for (const std::string name : {"p3", "p2", "p1xp1", "p2xp1", "p1xp1xp1"}) {
        const RingPtr R = ring_by_name(name);
        EXPECT_EQ(R->point().integral(), 1) << name;
        EXPECT_EQ(R->basis(0), R->unit()) << name;
    }
    const RingPtr P2 = make_p2();
    EXPECT_EQ((P2->c1() * P2->c1()).integral(), 9);
    EXPECT_EQ(make_p1xp1()->c2().integral(), 4);
}

TEST(Cohomology, LineClass)
{
    const RingPtr R = make_p3();
    const CurveClass beta = p3_line(R);
    EXPECT_EQ(beta.d_beta, 4);
    EXPECT_EQ(beta.integrate((*R)("H")), 1);
    EXPECT_EQ(beta.integrate(R->c1()), 4);
}
