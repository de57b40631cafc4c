#include "gwpt/expr.hpp"
#include "gwpt/series_data.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

using namespace gwpt;

namespace {

const QRational q = QRational::var();

class Table : public ::testing::Test {
protected:
    static void SetUpTestSuite() { table = new SeriesTable(load_table(default_table_path())); }
    static void TearDownTestSuite() { delete table; }
    static SeriesTable* table;
    RingPtr R = make_p3();
    CurveClass beta = p3_line(R);
    PtElement P(const std::string& s) const { return to_ch(parse_pt(s, R)); }
    QRational bracket(const std::string& s) const { return evaluate_bracket(P(s), *table, beta); }
};
SeriesTable* Table::table = nullptr;

}  // namespace

TEST(SeriesParse, Row)
{
    const SeriesTable t = parse_table(R"({"pt":[1],"L":[0],"H":[],"one":[],"num":[0,-1,0,1],"den":[2]})");
    ASSERT_EQ(t.rows.size(), 1u);
    const auto& [key, value] = *t.rows.begin();
    EXPECT_EQ(key.str(), "[1],[0],[],[]");
    EXPECT_EQ(value, q * (q * q - QRational(1)) / QRational(2));
}

TEST(SeriesParse, Errors)
{
    EXPECT_THROW(parse_table(R"({"pt":[1],"L":[0],"H":[],"one":[],"num":[1],"den":[0]})"), std::runtime_error);
    EXPECT_THROW(parse_table("{not json"), std::runtime_error);
    const std::string row = R"({"pt":[],"L":[1],"H":[],"one":[],"num":[1],"den":[1]})";
    EXPECT_THROW(parse_table(row + "\n" + row), std::runtime_error);
    EXPECT_THROW(load_table("/nonexistent/table.jsonl"), std::runtime_error);
}

TEST_F(Table, Checksum)
{
    EXPECT_TRUE(checksum_matches(default_table_path()));
    EXPECT_EQ(file_sha256(default_table_path()).size(), 64u);
}

TEST_F(Table, PrintedRows)
{
    EXPECT_EQ(bracket("ch(2,L)*ch(3,L)*ch(3,H)"), q * (QRational(3) * q * q - QRational(5) * q + QRational(3)));
    EXPECT_EQ(bracket("ch(4,L)*ch(3,H)"),
              QRational(5) * q * (q - QRational(1)).pow(3) / (QRational(4) * (q + QRational(1))));
    EXPECT_EQ(bracket("ch(3,p)*ch(2,L)"), q * (q * q - QRational(1)) / QRational(2));
    EXPECT_EQ(bracket("ch(2,p)*ch(3,L)"), QRational(3) * q * (q * q - QRational(1)) / QRational(2));
    EXPECT_EQ(bracket("ch(5,L)"), q * (q - QRational(1)) * (q * q - QRational(8) * q + QRational(1)) /
                                      (QRational(6) * (QRational(1) + q)));
    EXPECT_EQ(bracket("ch(4,H)*ch(3,H)*ch(2,L)"),
              q * (q - QRational(1)) * (QRational(3) * q * q + q + QRational(3)) / (QRational(1) + q));
}

TEST_F(Table, BracketNormalization)
{
    // ch_2(H) integrates to 1 over the line, ch_0(p) to -1
    EXPECT_EQ(bracket("ch(2,H)*ch(3,p)*ch(2,L)"), bracket("ch(3,p)*ch(2,L)"));
    EXPECT_EQ(bracket("ch(0,p)*ch(5,L)"), -bracket("ch(5,L)"));
    EXPECT_EQ(bracket("tch(4,H)*ch(3,L)"),
              bracket("ch(4,H)*ch(3,L)") + QRational(Rational(1, 4)) * bracket("ch(2,p)*ch(3,L)"));
    EXPECT_THROW(bracket("ch(9,p)^3"), MissingKey);
}

TEST_F(Table, WorkedRelations)
{
    EXPECT_TRUE(verify_virasoro_relation(2, P("ch(3,H)*ch(2,L)"), *table, beta).is_zero());
    EXPECT_TRUE(verify_virasoro_relation(2, P("ch(5,one)"), *table, beta).is_zero());
    EXPECT_TRUE(verify_virasoro_relation(-1, P("ch(3,H)*ch(2,L)"), *table, beta).is_zero());
}

TEST_F(Table, KeyEncoding)
{
    const PtElement D = P("ch(4,H)*ch(3,H)*ch(2,L)");
    const auto k = key_of(R, D.terms().begin()->first);
    ASSERT_TRUE(k);
    EXPECT_EQ(k->str(), "[],[0],[1,2],[]");
    EXPECT_EQ(key_element(R, *k), D);
    EXPECT_FALSE(coverage_miss(D, *table, beta));
}

TEST_F(Table, FunctionalSymmetry)
{
    const auto scan = functional_symmetry_scan(*table);
    EXPECT_EQ(scan.size(), table->rows.size());
    for (const auto& rec : scan) EXPECT_TRUE(rec.eps_a) << rec.key.str();
}

TEST_F(Table, QuarticH3Row)
{
    // recorded discrepancy: the printed row for <ch_3(H)^4> carries /2 while the
    // Lcal_1(ch_3(H)^3) relation needs /8; the bundled table keeps the printed value
    const QRational printed = q * (QRational(81) * q * q - QRational(102) * q + QRational(81)) / QRational(2);
    EXPECT_EQ(bracket("ch(3,H)^4"), printed);
    const QRational v = verify_virasoro_relation(1, P("ch(3,H)^3"), *table, beta);
    EXPECT_EQ(v, QRational(-4) * (printed - printed / QRational(4)));
}
