#include "gwpt/expr.hpp"
#include "gwpt/hilbert_surface.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

using namespace gwpt;

namespace {

class Hilb : public ::testing::Test {
protected:
    RingPtr S = make_p1xp1();
    RingPtr X = product_with_p1(S);
    PtElement gen(int k, const CohClass& g) const { return PtElement::gen(PtBasis::ch, k, g); }
};

}  // namespace

TEST_F(Hilb, Rk)
{
    // R_2 ch_2(pt) = (2)(3)(4) ch_4(pt)
    EXPECT_EQ(apply_Rk(2, gen(2, S->point())), Rational(24) * gen(4, S->point()));
    EXPECT_EQ(apply_Rk(-1, gen(3, S->unit())), gen(2, S->unit()));
}

TEST_F(Hilb, EmbedProject)
{
    const CohClass s = S->basis(1);
    EXPECT_EQ(embed(gen(3, s), X), gen(3, times_point(X, s)));
    CohClass s_x1 = X->zero();
    for (size_t i = 0; i < X->size(); ++i)
        if (X->fiber_part(i) == 0 && X->factor_index(i) == 1) s_x1 = X->basis(i);
    EXPECT_TRUE(project(gen(3, s_x1)).is_zero());
    const PtElement D = gen(3, s) * gen(4, S->point()) + gen(2, S->unit());
    EXPECT_EQ(project(embed(D, X)), D);
}

TEST_F(Hilb, ConstraintOperator)
{
    const PtElement D = gen(2, S->point());
    for (int k = -1; k <= 2; ++k) {
        const PtElement extra = factorial(k + 1) * apply_Rk(-1, gen(k + 1, S->point()) * D);
        EXPECT_EQ(apply_surface_constraint(k, D), apply_Lk_surface(k, D) + extra) << k;
    }
}

TEST_F(Hilb, Composition)
{
    for (const RingPtr& surf : {make_p2(), make_p1xp1()}) {
        for (int k = -1; k <= 2; ++k) {
            const CompositionReport r = composition_check(k, surf, 2, 5);
            EXPECT_TRUE(r.ok()) << surf->name() << " k=" << k << ": "
                                << (r.ok() ? "" : (r.mismatches[0].lhs - r.mismatches[0].rhs).str());
            EXPECT_GT(r.checked, 10);
        }
    }
}
