#include "gwpt/cli.hpp"
#include "gwpt/expr.hpp"
#include "gwpt/qrational.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace gwpt;

namespace {

struct CliRun {
    int code = 0;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    CliRun r;
    r.code = run_command(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST(Parser, Examples)
{
    const RingPtr R = make_p3();
    const Expr e = parse_expression("ch(3,H)*ch(2,L)", R);
    EXPECT_EQ(e.kind, Expr::Kind::mul);
    const PtElement two = parse_pt("tch(5,L) + (1/4)*ch(2,L)", R);
    EXPECT_EQ(two.terms().size(), 2u);
    try {
        parse_expression("ch(-1,H)", R);
        FAIL() << "expected a parse error";
    } catch (const ParseError& err) {
        EXPECT_EQ(err.pos, 3u);
    }
    EXPECT_THROW(parse_expression("ch(3,Q)", R), ParseError);
    EXPECT_THROW(parse_expression("ch(3,H", R), ParseError);
    EXPECT_THROW(evaluate(parse_expression("ch(3,H)*tau(2,H)", R), R), ParseError);
    EXPECT_THROW(evaluate(parse_expression("w*ch(3,H)", R), R), ParseError);
    EXPECT_THROW(evaluate(parse_expression("ch(3,H)^-1", R), R), ParseError);
    EXPECT_THROW(parse_expression("a(-2,H)", R), ParseError);
    EXPECT_NO_THROW(parse_expression("tau(-2,p)*a(-1,H)", R));
}

TEST(Parser, RoundTrip)
{
    const RingPtr R = make_p3();
    for (const char* s : {"ch(4,H)*ch(3,H)*ch(2,L)", "tch(5,L) + (1/4)*ch(2,L)", "-2/3*ch(7,one)^2 + fch1*ch(0,p)",
                          "tch(3,H)^3 - tch(2,p)", "w^-3*tau(3,L) + 22/3*w^-3*tau(2,p) + 1/3*w^-1*tau(0,p)^2",
                          "1/2*w*a(2,L) - 4*a(1,p)", "0", "7/5", "w^-2 - w"}) {
        const std::string c = canonical(s, R);
        EXPECT_EQ(canonical(c, R), c) << s;
        EXPECT_EQ(evaluate(parse_expression(c, R), R), evaluate(parse_expression(s, R), R)) << s;
    }
}

TEST(Cli, Bracket)
{
    const CliRun r = run({"bracket", "ch(4,H)*ch(3,H)*ch(2,L)"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    const RingPtr R = make_p3();
    const QRational q = QRational::var();
    const QRational want = q * (q - QRational(1)) * (QRational(3) * q * q + q + QRational(3)) / (QRational(1) + q);
    EXPECT_EQ(r.out, want.str() + "\n");
}

TEST(Cli, Intertwine)
{
    const CliRun r = run({"intertwine", "-k", "2", "tch(5,H)"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST(Cli, IntertwineFailurePrintsDifference)
{
    const CliRun r = run({"--format", "json", "intertwine", "-k", "0", "tch(5,L)"});
    EXPECT_EQ(r.code, kExitCheckFailed);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["ok"].get<bool>());
    ASSERT_EQ(j["checks"].size(), 1u);
    EXPECT_FALSE(j["checks"][0]["failures"][0]["difference"].get<std::string>().empty());
}

TEST(Cli, VerifyRelation)
{
    EXPECT_EQ(run({"verify", "-k", "2", "ch(3,H)*ch(2,L)"}).code, kExitOk);
    const CliRun bad = run({"verify", "-k", "1", "ch(3,H)^3"});
    EXPECT_EQ(bad.code, kExitCheckFailed);
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifySelectedCriteria)
{
    const CliRun r = run({"--format", "json", "verify", "--criterion", "1", "--criterion", "2"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["command"], "verify");
    EXPECT_EQ(j["checks"].size(), 2u);
}

TEST(Cli, ExpandAndCorrespond)
{
    CliRun r = run({"expand", "--to", "ch", "tch(4,H)"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, canonical("ch(4,H) + 1/4*ch(2,p)", make_p3()) + "\n");
    r = run({"correspond", "tch(5,L)"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, canonical("w^-3*tau(3,L) + 22/3*w^-3*tau(2,p) + 1/3*w^-1*tau(0,p)^2", make_p3()) + "\n");
    r = run({"expand", "--to", "a", "tau(1,L)"});
    EXPECT_EQ(r.out, canonical("1/2*w*a(2,L) - 4*a(1,p)", make_p3()) + "\n");
}

TEST(Cli, VirasoroApply)
{
    const CliRun r = run({"virasoro-apply", "-k", "-1", "--operator", "Lcal", "--normalize", "ch(2,p)"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "0\n");
    const CliRun g = run({"virasoro-apply", "-k", "0", "1"});
    EXPECT_EQ(g.code, kExitOk);
}

TEST(Cli, GwPredict)
{
    const CliRun r = run({"--format", "json", "gw-predict", "tch(2,p)"});
    EXPECT_EQ(r.code, kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["d_beta"], 4);
    EXPECT_EQ(j["gw_side"], canonical("w^4*tau(0,p)", make_p3()));
}

TEST(Cli, HilbertAndVertex)
{
    CliRun r = run({"hilbert-check", "--surface", "p2", "-k", "1", "--max-index", "4"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    r = run({"vertex-verify", "--k1", "3", "--k2", "2", "--k3", "1"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
}

TEST(Cli, Errors)
{
    CliRun r = run({"--format", "json", "bracket", "ch(-1,H)"});
    EXPECT_EQ(r.code, kExitInputError);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"]["kind"], "parse");
    EXPECT_EQ(j["error"]["position"], 3);
    r = run({"--format", "json", "bracket", "ch(9,p)^3"});
    EXPECT_EQ(r.code, kExitInputError);
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"]["kind"], "missing_key");
    r = run({"--ring", "p2", "bracket", "ch(3,H)"});
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"--format", "xml", "expand", "1"}).code, kExitUsage);
}

TEST(Cli, JsonIsStable)
{
    const std::vector<std::string> args{"--format", "json", "verify", "--criterion", "13"};
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NO_THROW(nlohmann::json::parse(a.out));
}

TEST(Cli, CustomRing)
{
    CliRun r = run({"--ring", "p2xp1", "expand", "ch(3,one)"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    r = run({"--ring", std::string(GWPT_DATA_DIR) + "/p3_ring.json", "expand", "--to", "ch", "tch(4,H)"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "(1/4)*ch(2,p) + ch(4,H)\n");
    r = run({"--ring", "/nonexistent.json", "expand", "1"});
    EXPECT_EQ(r.code, kExitInputError);
}
