#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "opart_cli.hpp"

namespace opart {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

TEST(Serialize, QLaurentIsCanonical) {
  const QLaurent s = QLaurent::one(3) + QLaurent::monomial(2, DPoly::monomial(1, BigInt(-5)), 3);
  EXPECT_EQ(canonical(to_json(s)), R"({"terms":[{"c":"1","d":0,"q":0},{"c":"-5","d":1,"q":2}],"trunc":3})");
  EXPECT_EQ(canonical(to_json(QLaurent::monomial(-2))), R"({"terms":[{"c":"1","d":0,"q":-2}],"trunc":null})");
}

TEST(Serialize, BigCoefficientsStayExact) {
  BigInt big = 1;
  for (int i = 0; i < 30; ++i) big *= 1000;
  const Json j = to_json(QLaurent::constant(DPoly(big)));
  EXPECT_EQ(j["terms"][0]["c"], "1" + std::string(90, '0'));
}

TEST(Serialize, CountTableShape) {
  const auto sys = build_system({1, 2, 4}, 7);
  const Json j = to_json(count_G(sys, 8), sys, "G");
  EXPECT_EQ(j["system"], Json::parse(R"({"N":7,"a":[1,2,4]})"));
  EXPECT_EQ(j["n_max"], 8);
  EXPECT_EQ(j["side"], "G");
  EXPECT_EQ(j["rows"][8], Json::parse(R"({"n":8,"by_k":["1","2","1"]})"));
  EXPECT_EQ(j["rows"][1]["by_k"], Json::parse(R"(["0"])"));
}

TEST(Serialize, ChainReportShape) {
  const Json j = to_json(verify_chain(build_system({1, 2}, 3), 3, 3, 12));
  EXPECT_EQ(j["verdict"], "pass");
  ASSERT_EQ(j["stages"].size(), 7u);
  EXPECT_EQ(j["stages"][0], Json::parse(R"({"name":"rec_prime","residual_zero":true})"));
}

TEST(Cli, CountWorkedExample) {
  const auto r = run({"count", "--N", "7", "--a", "1,2,4", "--n-max", "8", "--side", "all"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["F"]["rows"][8]["by_k"], j["G"]["rows"][8]["by_k"]);
  EXPECT_EQ(j["G"]["rows"][8]["by_k"], Json::parse(R"(["1","2","1"])"));
}

TEST(Cli, CountRejectsInadmissibleSystem) {
  const auto r = run({"count", "--N", "7", "--a", "1,2,3", "--n-max", "8"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("SumsNotDistinct"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, CountZeroRow) {
  const auto r = run({"count", "--N", "3", "--a", "1,2", "--n-max", "0", "--side", "F"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["rows"], Json::parse(R"([{"n":0,"by_k":["1"]}])"));
}

TEST(Cli, CountCsvAndTable) {
  const auto csv = run({"count", "--N", "7", "--a", "1,2,4", "--n-max", "8", "--side", "G", "--output", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "n,k0,k1,k2");
  EXPECT_NE(csv.out.find("\n8,1,2,1\n"), std::string::npos);
  const auto table = run({"count", "--N", "7", "--a", "1,2,4", "--n-max", "8", "--output", "table"});
  ASSERT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("verdict: pass"), std::string::npos);
}

TEST(Cli, ExpandProductRow) {
  const auto r = run({"expand", "--what", "product", "--N", "7", "--a", "1,2,4", "--trunc", "8", "--output", "table"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("8  1 + 2d + d^2\n"), std::string::npos) << r.out;
}

TEST(Cli, ExpandGZeroIsOne) {
  const auto r = run({"expand", "--what", "gm", "--m", "0", "--N", "7", "--a", "1,2,4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["terms"], Json::parse(R"([{"q":0,"d":0,"c":"1"}])"));
}

TEST(Cli, ExpandLimitIsByteIdenticalToProduct) {
  const auto lim = run({"expand", "--what", "limit", "--N", "9", "--a", "1,3,5", "--trunc", "20"});
  const auto prod = run({"expand", "--what", "product", "--N", "9", "--a", "1,3,5", "--trunc", "20"});
  ASSERT_EQ(lim.code, 0);
  EXPECT_EQ(lim.out, prod.out);
}

TEST(Cli, VerifyTheoremAndTmj) {
  const auto th = run({"verify", "--N", "7", "--a", "1,2,4", "--trunc", "40", "--checks", "theorem"});
  EXPECT_EQ(th.code, 0) << th.out;
  EXPECT_EQ(Json::parse(th.out)["verdict"], "pass");
  const auto tmj = run({"verify", "--N", "7", "--a", "1,2,4", "--checks", "tmj", "--output", "table"});
  EXPECT_EQ(tmj.code, 0);
  EXPECT_NE(tmj.out.find("tmj     pass  9 cases"), std::string::npos) << tmj.out;
}

TEST(Cli, VerifyBattery) {
  const auto r = run({"verify", "--battery", "--trunc", "25"});
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  ASSERT_EQ(j["systems"].size(), 4u);
  EXPECT_EQ(j["systems"][3]["system"]["N"], 15);
  for (const auto& s : j["systems"]) EXPECT_EQ(s["checks"].size(), 8u);
}

TEST(Cli, VerifyChainSkippedForOneGenerator) {
  const auto r = run({"verify", "--N", "2", "--a", "1", "--checks", "chain,rec", "--trunc", "20"});
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["checks"][0]["name"], "rec");
  EXPECT_EQ(j["checks"][1]["skipped"], true);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run({"verify", "--N", "7", "--checks", "nonsense"}).code, 2);
  EXPECT_EQ(run({"count", "--a", "1,2"}).code, 2);
  EXPECT_EQ(run({"count", "--N", "0", "--a", "1"}).code, 2);
  EXPECT_EQ(run({"count", "--N", "7", "--a", "1,2,4", "--n-max", "-3"}).code, 2);
  EXPECT_EQ(run({"expand", "--N", "7", "--a", "1,2,4", "--what", "gm", "--m", "-40"}).code, 2);
  EXPECT_EQ(run({"verify", "--battery", "--N", "7", "--a", "1,2,4"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

}  // namespace
}  // namespace opart
