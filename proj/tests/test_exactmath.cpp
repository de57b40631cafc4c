#include "gwpt/combinatorics.hpp"
#include "gwpt/qrational.hpp"
#include "gwpt/rational.hpp"
#include "gwpt/series.hpp"
#include "gwpt/wscalar.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gwpt;

namespace {

QRational qpoly(const std::vector<long>& c)
{
    return QRational::from_integer_coeffs(c, {1});
}

const QRational q = QRational::var();

}  // namespace

TEST(Rational, CanonicalForm)
{
    Rational a(6, -4);
    a.canonicalize();
    EXPECT_EQ(a.get_num(), -3);
    EXPECT_EQ(a.get_den(), 2);
    EXPECT_EQ(parse_rational("-10/4"), Rational(-5, 2));
    EXPECT_EQ(to_string(Rational(7, 3)), "7/3");
}

TEST(Rational, Factorials)
{
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(factorial(6), 720);
    EXPECT_EQ(binomial(7, 3), 35);
    EXPECT_EQ(harmonic(3), Rational(11, 6));
    EXPECT_EQ(harmonic(0), 0);
    // 1/(1*2) + 1/(1*3) + 1/(2*3)
    EXPECT_EQ(harmonic2(3), Rational(1));
}

TEST(Rational, ElementarySymmetric)
{
    EXPECT_EQ(elementary_symmetric(0, {3, 5}), 1);
    EXPECT_EQ(elementary_symmetric(0, {}), 1);
    EXPECT_EQ(elementary_symmetric(2, {2, 3, 4}), 26);
    EXPECT_THROW(elementary_symmetric(4, {2, 3, 4}), std::out_of_range);
}

TEST(Rational, BracketSymbol)
{
    // [2]^2_1 = e_2(2,3,4) = (4!/1!)(1/2 + 1/3 + 1/4)
    EXPECT_EQ(bracket_symbol(2, 2, 1), 26);
    EXPECT_EQ(bracket_symbol(2, 2, 1), factorial(4) * (Rational(1, 2) + Rational(1, 3) + Rational(1, 4)));
    EXPECT_EQ(bracket_symbol(-1, 2, 2), 0);
    EXPECT_EQ(bracket_symbol(3, 2, 0), 60);
    EXPECT_EQ(bracket_symbol(3, 2, 5), 0);
}

TEST(WScalar, Arithmetic)
{
    for (int k = -4; k <= 4; ++k) EXPECT_EQ(WScalar::w_pow(k) * WScalar::w_pow(-k), WScalar(1));
    EXPECT_EQ(WScalar::u_pow(2), WScalar::w_pow(2, -1));
    EXPECT_EQ(WScalar::w_pow(2) * WScalar::w_pow(2), WScalar::u_pow(4));
    EXPECT_EQ(WScalar::w_pow(1, -1).pow(4), WScalar::w_pow(4));
    EXPECT_EQ(WScalar::w_pow(2, 3).pow(-1), WScalar::w_pow(-2, Rational(1, 3)));
    EXPECT_THROW((WScalar(1) + WScalar::w_pow(1)).pow(-1), std::exception);
}

TEST(WScalar, NoZeroTerms)
{
    WScalar a = WScalar::w_pow(3, 2) + WScalar(1);
    a -= WScalar::w_pow(3, 2);
    EXPECT_EQ(a, WScalar(1));
    EXPECT_EQ(a.terms().size(), 1u);
    EXPECT_TRUE((a - a).is_zero());
}

TEST(QRational, Examples)
{
    const QRational f = q * (q + 1).pow(2);
    EXPECT_EQ(f + QRational(0), f);
    EXPECT_EQ(q * (QRational(3) * q * q - QRational(5) * q + QRational(3)), qpoly({0, 3, -5, 3}));
    const QRational half = q * (q * q - QRational(1)) / QRational(2);
    EXPECT_EQ(QRational(6) * half, QRational(3) * q * (q * q - QRational(1)));
    EXPECT_THROW(q / QRational(0), std::exception);
}

TEST(QRational, CanonicalReduction)
{
    const QRational f = (q * q - QRational(1)) / (q + QRational(1));
    EXPECT_EQ(f.num(), Poly(std::vector<Rational>{-1, 1}));
    EXPECT_EQ(f.den(), Poly(Rational(1)));
    const QRational g = QRational(1) / (QRational(-2) * q - QRational(2));
    EXPECT_GT(g.den().lead(), 0);
}

TEST(QRational, FunctionalSymmetry)
{
    auto s = qpoly({0, 3, -5, 3}).functional_symmetry();
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, std::make_pair(1, 4));
    s = (q * (q * q - QRational(1)) / QRational(2)).functional_symmetry();
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, std::make_pair(-1, 4));
    // 5q(q-1)^3 / 4(1+q): f(1/q) = -q^{-4} f(q)
    const QRational h = QRational(5) * q * (q - QRational(1)).pow(3) / (QRational(4) * (q + QRational(1)));
    s = h.functional_symmetry();
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, std::make_pair(-1, 4));
    EXPECT_EQ(h.at_inverse(), QRational(-1) * h / q.pow(4));
    EXPECT_FALSE((q + QRational(2)).functional_symmetry());
}

TEST(QRational, FieldAxiomsRandom)
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> d(-4, 4);
    auto rnd = [&] {
        QRational n = qpoly({d(rng), d(rng), d(rng)});
        QRational m = qpoly({d(rng) == 0 ? 1 : d(rng), d(rng)});
        if (m.is_zero()) m = QRational(1);
        return n / m;
    };
    for (int i = 0; i < 50; ++i) {
        const QRational a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) - b, a);
        if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    }
}

TEST(Combinatorics, Partitions)
{
    EXPECT_EQ(partitions_of_length(5, 2), (std::vector<IntPartition>{{4, 1}, {3, 2}}));
    EXPECT_TRUE(partitions_of_length(2, 3).empty());
    EXPECT_EQ(aut({2, 1, 1}), 2);
    EXPECT_EQ(aut({1, 1, 1}), 6);
    // Bell numbers
    EXPECT_EQ(set_partitions(3).size(), 5u);
    EXPECT_EQ(set_partitions(4).size(), 15u);
}

class SeriesTest : public ::testing::Test {
protected:
    using S = TruncSeries<Rational>;
    std::shared_ptr<const SeriesLayout> layout = std::make_shared<SeriesLayout>(
        std::vector<SeriesVar>{{"x", 0, 3, false}, {"t", 0, 2, false}, {"v", -6, 6, true}});
    S var(const std::string& n, int p = 1) const { return S::variable(layout, n, p); }
    S one() const { return S::constant(layout, Rational(1)); }
};

TEST_F(SeriesTest, Exponential)
{
    // u = 1: exp(xv) = 1 + xv + x^2v^2/2 + x^3v^3/6
    const S e = (var("x") * var("v")).exp();
    S want = one() + var("x") * var("v");
    want += (var("x", 2) * var("v", 2)).scaled(Rational(1, 2));
    want += (var("x", 3) * var("v", 3)).scaled(Rational(1, 6));
    EXPECT_EQ(e, want);
    EXPECT_THROW(one().exp(), std::domain_error);
}

TEST_F(SeriesTest, Truncation)
{
    const S a = one() + var("t") * var("v", -1);
    const S b = one() - var("t") * var("v", -1);
    EXPECT_EQ(a * b, one() - var("t", 2) * var("v", -2));
    EXPECT_TRUE(var("t", 3).is_zero());
    EXPECT_THROW(var("v", -7), std::range_error);
}

TEST_F(SeriesTest, Residue)
{
    const Rational sign(kResidueSign);
    EXPECT_EQ(var("v", -1).residue("v"), one().scaled(sign));
    EXPECT_TRUE((one() + var("v")).residue("v").is_zero());
    const S e = (var("x") * var("v")).exp() * var("x", 2) * var("v", -1);
    EXPECT_EQ(e.residue("v"), var("x", 2).scaled(sign));
    EXPECT_THROW(var("x").residue("x"), std::invalid_argument);
}

TEST_F(SeriesTest, Substitute)
{
    // x -> t + t^2 in 1 + x: truncation at t^2
    const S s = (one() + var("x")).substitute("x", var("t") + var("t", 2));
    EXPECT_EQ(s, one() + var("t") + var("t", 2));
    const S inv = var("v", -2).substitute("v", var("v"));
    EXPECT_EQ(inv, var("v", -2));
}
