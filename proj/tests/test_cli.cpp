#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

#include "cli.hpp"
#include "spinor/branching.hpp"
#include "spinor/duflo.hpp"

using namespace spinor;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
  const Outcome o = call(std::move(args));
  EXPECT_EQ(o.code, cli::kOk) << o.err;
  return json::parse(o.out);
}

Weight to_weight(const json& arr) {
  Weight w;
  for (const auto& s : arr) w.push_back(HalfInt::parse(s.get<std::string>()));
  return w;
}

}  // namespace

TEST(Cli, BranchDiscreteSeriesExample) {
  const json j = call_json({"branch", "--m", "3", "--rep", "ds", "--gamma", "3/2,1/2", "--sign", "-"});
  ASSERT_EQ(j["result"]["components"].size(), 1u);
  EXPECT_EQ(j["result"]["components"][0]["tau"], json::array({"1"}));
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST(Cli, OrbitImageEllipticExample) {
  const json j = call_json({"orbit-image", "--m", "3", "--kind", "elliptic", "--a", "2,1"});
  EXPECT_EQ(j["result"]["x1"], json::array({"1", "2"}));
  EXPECT_EQ(j["result"]["pf"], "+");
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST(Cli, DufloVerifyExample) {
  const Outcome o = call({"duflo-verify", "--m", "3", "--rep", "ds", "--gamma", "3/2,1/2", "--sign", "-", "--bound", "5"});
  EXPECT_EQ(o.code, cli::kOk) << o.err;
  EXPECT_TRUE(json::parse(o.out)["result"]["matched"].get<bool>());
}

TEST(Cli, ReportSchema) {
  const json j = call_json({"classify", "--m", "4", "--gamma", "2,1,0"});
  ASSERT_TRUE(j.contains("request") && j.contains("result") && j.contains("checks"));
  EXPECT_EQ(j["request"]["subcommand"], "classify");
  EXPECT_EQ(j["request"]["m"], 4);
  EXPECT_EQ(j["result"]["class"], "Lambda0");
  EXPECT_TRUE(j["result"]["nu"].is_string());
}

TEST(Cli, BranchReportReparsesToBranchTable) {
  const std::vector<std::vector<std::string>> requests = {
      {"branch", "--m", "5", "--rep", "ps", "--mu", "2,1", "--nu-im", "3/2"},
      {"branch", "--m", "6", "--rep", "pij", "--gamma", "3,2,1,0", "--j", "2"},
      {"branch", "--m", "7", "--rep", "ds", "--gamma", "4,3,2,1", "--sign", "+"},
      {"branch", "--m", "5", "--rep", "aq", "--j", "2", "--lambda", "1,0,0"},
  };
  for (const auto& req : requests) {
    const json j = call_json(req);
    std::vector<Weight> got;
    for (const auto& c : j["result"]["components"]) got.push_back(to_weight(c["tau"]));
    RepLabel rep;
    if (req[4] == "ps") rep = make_ps(parse_weight("2,1"), {0.0, 1.5}, Group(5));
    if (req[4] == "pij") rep = make_pij(classify_infl_char(parse_weight("3,2,1,0"), Group(6)), 2);
    if (req[4] == "ds") rep = make_ds(classify_infl_char(parse_weight("4,3,2,1"), Group(7)), Sign::Plus);
    if (req[4] == "aq") rep = make_aq(2, parse_weight("1,0,0"), Group(5));
    EXPECT_EQ(got, branch(rep).components) << req[4];
    EXPECT_EQ(j["result"]["rep"], to_string(rep));
  }
}

TEST(Cli, OrbitReportReparsesToMomentImage) {
  const json j = call_json({"orbit-image", "--m", "6", "--kind", "non-elliptic", "--a", "3,2,1,1/2"});
  Vec a(4);
  a << 3, 2, 1, 0.5;
  const MomentImage im = moment_image(make_orbit(Group(6), OrbitFamily::NonElliptic, a));
  for (std::size_t i = 0; i < im.slots.size(); ++i) {
    const json& slot = j["result"]["x" + std::to_string(i + 1)];
    EXPECT_EQ(HalfInt::parse(slot[0].get<std::string>()).to_double(), im.slots[i].lo);
    EXPECT_EQ(HalfInt::parse(slot[1].get<std::string>()).to_double(), im.slots[i].hi);
  }
  EXPECT_EQ(j["result"]["pf"], to_string(im.pf_rule));
}

TEST(Cli, OrbitPointReport) {
  const json j = call_json({"orbit-image", "--m", "3", "--kind", "elliptic", "--a", "2,1", "--b", "1,0"});
  EXPECT_EQ(j["result"]["point"]["x"], json::array({"1"}));
  EXPECT_EQ(j["result"]["point"]["pf"], "+");
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::vector<std::string>> requests = {
      {"orbit-image", "--m", "9", "--kind", "elliptic", "--a", "4,3,2,1,1/2", "--seed", "7", "--samples", "50"},
      {"duflo-verify", "--m", "5", "--rep", "ps", "--mu", "1,0", "--nu-im", "2", "--format", "csv"},
      {"branch", "--m", "8", "--rep", "ps", "--mu", "2,1,1,0", "--format", "text"},
  };
  for (const auto& req : requests) {
    const Outcome a = call(req), b = call(req);
    EXPECT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out) << req[0];
  }
}

TEST(Cli, CsvOutput) {
  const Outcome o = call({"branch", "--m", "5", "--rep", "ps", "--mu", "1,0", "--nu-im", "1", "--format", "csv"});
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_EQ(o.out, "tau_1,tau_2,dim\n0,0,1\n1,0,4\n");
}

TEST(Cli, MismatchExitsOne) {
  const Outcome o = call({"duflo-verify", "--m", "4", "--rep", "aq", "--j", "2", "--lambda", "0,-1,0"});
  EXPECT_EQ(o.code, cli::kMismatch);
  EXPECT_FALSE(json::parse(o.out)["result"]["matched"].get<bool>());
}

TEST(Cli, UsageErrorsExitTwo) {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"frobnicate"},
      {"branch", "--m", "3"},
      {"branch", "--m", "3", "--rep", "ds", "--gamma", "3/2,x", "--sign", "-"},
      {"branch", "--m", "3", "--rep", "ds", "--gamma", "3/2,1/2", "--sign", "?"},
      {"classify", "--m", "1", "--gamma", "1"},
      {"classify", "--m", "3", "--gamma", "1,2,3"},
      {"orbit-image", "--m", "3", "--kind", "spiral", "--a", "1"},
      {"orbit-image", "--m", "3", "--kind", "elliptic", "--a", "1,2"},
      {"orbit-image", "--m", "3", "--kind", "elliptic", "--a", "2,1", "--b", "0.3,0"},
      {"duflo-verify", "--m", "3", "--rep", "ps", "--mu", "3", "--nu-im", "1", "--bound", "2"},
      {"analysis-verify", "--check", "everything"},
      {"branch", "--m", "3", "--rep", "ds", "--gamma", "3/2,1/2", "--sign", "-", "--format", "xml"},
  };
  for (const auto& args : bad) {
    const Outcome o = call(args);
    EXPECT_EQ(o.code, cli::kUsage) << (args.empty() ? "<none>" : args[0]) << " " << o.out;
    EXPECT_FALSE(o.err.empty());
  }
}

TEST(Cli, HelpExitsZero) {
  const Outcome o = call({"--help"});
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_NE(o.out.find("duflo-verify"), std::string::npos);
}

TEST(Cli, AnalysisChecksAndToleranceOverride) {
  const json j = call_json({"analysis-verify", "--check", "poisson"});
  ASSERT_EQ(j["checks"].size(), 1u);
  EXPECT_TRUE(j["checks"][0]["pass"].get<bool>());
  const Outcome strict = call({"analysis-verify", "--check", "kbessel", "--tol", "1e-30"});
  EXPECT_EQ(strict.code, cli::kMismatch);
}

TEST(Cli, SelfTestPasses) {
  const Outcome o = call({"self-test"});
  EXPECT_EQ(o.code, cli::kOk) << o.out;
}
