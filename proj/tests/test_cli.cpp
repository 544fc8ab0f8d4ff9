#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace zflat;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("zflat_cli_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

}  // namespace

TEST(Cli, TauScalingTheorem) {
  auto r = run({"verify", "--theorem", "tau-scaling", "--matroid", "fig1_N", "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = r.parsed();
  EXPECT_TRUE(j.at("passed").get<bool>());
  ASSERT_EQ(j.at("checks").size(), 1u);
  EXPECT_EQ(j["checks"][0]["expected"], "5");
  EXPECT_EQ(j["checks"][0]["observed"], "5");
}

TEST(Cli, KappaScalingSkipsWhenKappaIsRank) {
  auto r = run({"verify", "--theorem", "kappa-scaling", "--matroid", "fig1_N", "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_EQ(j["checks"][0]["status"], "skip");
  EXPECT_EQ(j["checks"][0]["observed"], "5");
}

TEST(Cli, ConfigCompare) {
  auto same = run({"config", "compare", "fig1_M", "fig1_N"});
  ASSERT_EQ(same.code, 0) << same.err;
  EXPECT_TRUE(same.parsed().at("isomorphic").get<bool>());
  auto differ = run({"config", "compare", "fig1_M", "fig2_M"});
  EXPECT_FALSE(differ.parsed().at("isomorphic").get<bool>());
}

TEST(Cli, ExactBranchWidth) {
  auto r = run({"bw", "--exact", "fig2_N"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed().at("value"), 4);
}

TEST(Cli, CertifiedBranchWidthFromAFile) {
  auto exact = run({"bw", "--exact", "--catalog", "fig2_M"});
  ASSERT_EQ(exact.code, 0);
  const auto path = write_temp("upper", exact.parsed().at("decomposition"));
  auto r = run({"bw", "--certify", "--upper", path, "--lower", "rank-lt:2:3", "fig2_M"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = r.parsed();
  EXPECT_TRUE(j.at("exact").get<bool>());
  EXPECT_EQ(j["upper"]["width"], 3);
  EXPECT_EQ(j["lower"]["order"], 3);

  auto bad = run({"bw", "--certify", "--upper", path, "--lower", "rank-lt:2:4", "fig2_M"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.parsed().at("error").get<std::string>().find("T2"), std::string::npos);
}

TEST(Cli, ConnectivityOutput) {
  auto r = run({"tau", "fig1_M"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("value"), 2);
  auto inf = run({"tau", "U2_4"});
  EXPECT_EQ(inf.parsed().at("value"), "infinite");
  EXPECT_TRUE(inf.parsed().at("witness").is_null());
  EXPECT_EQ(run({"kappa", "fig1_N"}).parsed().at("value"), 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bw", "fig2_M"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bw", "--exact", "--certify", "fig2_M"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"tau"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"tau", "no_such_matroid"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--budget", "lots", "tau", "fig1_M"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--budget", "certify", "bw", "--exact", "fig2_M"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--threads", "0", "tau", "fig1_M"}).code, cli::kExitUsage);
}

TEST(Cli, BudgetExceededIsAnError) {
  auto r = run({"--budget", "exact:5", "tau", "fig1_M"});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_TRUE(r.parsed().contains("error"));
  EXPECT_EQ(run({"tau", "U2_21"}).code, cli::kExitError);
  EXPECT_EQ(run({"--budget", "exact:6", "tau", "fig1_M"}).code, cli::kExitOk);
}

TEST(Cli, ValidateReportsAxiomViolations) {
  EXPECT_EQ(run({"validate", "fig1_M"}).code, cli::kExitOk);
  // Two rank-2 lines meeting in two points: their meet {1,2} is missing.
  const json bad{{"elements", {"1", "2", "3", "4", "5"}},
                 {"cyclic_flats",
                  {{{"set", json::array()}, {"rank", 0}},
                   {{"set", {"1", "2", "3"}}, {"rank", 2}},
                   {{"set", {"1", "2", "4"}}, {"rank", 2}},
                   {{"set", {"1", "2", "3", "4", "5"}}, {"rank", 3}}}}};
  auto r = run({"--input", write_temp("bad", bad), "validate"});
  EXPECT_EQ(r.code, cli::kExitFailed);
  const auto j = r.parsed();
  EXPECT_FALSE(j.at("valid").get<bool>());
  EXPECT_EQ(j.at("axiom"), "Z3");
}

TEST(Cli, InputFileRoundTrip) {
  for (const auto& entry : catalog()) {
    const auto j = json_io::to_json(entry.matroid);
    EXPECT_TRUE(equals(json_io::matroid_from_json(j), entry.matroid)) << entry.name;
    auto r = run({"--input", write_temp(entry.name, j), "rank"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.parsed().at("rank"), entry.matroid.rank());
  }
}

TEST(Cli, ExpandThenDeflate) {
  auto e = run({"expand", "--t", "2", "fig1_M"});
  ASSERT_EQ(e.code, 0);
  const auto mt = e.parsed().at("matroid");
  EXPECT_EQ(mt.at("elements").size(), 12u);
  auto d = run({"--input", write_temp("fig1_M_2", mt), "deflate", "--t", "2"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.parsed().at("matroid").at("elements").size(), 6u);
  EXPECT_EQ(run({"deflate", "--t", "2", "fig1_M"}).code, cli::kExitError);
}

TEST(Cli, UnionAndPresentation) {
  auto u = run({"union", "--sets", "1,2,3|4,5,6|1,2,3,4,5,6", "--elements", "1,2,3,4,5,6"});
  ASSERT_EQ(u.code, 0) << u.err;
  EXPECT_TRUE(equals(json_io::matroid_from_json(u.parsed()), catalog_entry("fig1_M")->matroid));
  EXPECT_EQ(run({"presentation-verify", "--sets", "1,2,3|4,5,6|1,2,3,4,5,6", "fig1_M"}).code, cli::kExitOk);
  EXPECT_EQ(run({"presentation-verify", "--sets", "1,2,3|4,5,6", "fig1_M"}).code, cli::kExitFailed);
}

TEST(Cli, Positroids) {
  auto bad = run({"positroid-check", "--order", "1,2,3,4,5,6", "fig1_N"});
  EXPECT_EQ(bad.code, cli::kExitFailed);
  EXPECT_EQ(bad.parsed().at("flat"), json({"1", "4", "5"}));
  EXPECT_EQ(bad.parsed().at("component"), json({"2", "3", "6"}));
  auto s = run({"positroid-search", "fig1_N"});
  EXPECT_EQ(s.parsed().at("order"), json({"1", "2", "3", "6", "4", "5"}));
}

TEST(Cli, TangleVerify) {
  auto ok = run({"tangle", "verify", "fig2_M", "--family", "rank-lt:2:3"});
  EXPECT_EQ(ok.code, 0);
  auto bad = run({"tangle", "verify", "fig2_M", "--family", "rank-lt:2:4"});
  EXPECT_EQ(bad.code, cli::kExitFailed);
  EXPECT_EQ(bad.parsed().at("axiom"), "T2");
  const json explicit_family{{"order", 2}, {"members", {{"sets", {json::array()}}}}};
  auto file = run({"tangle", "verify", "U2_4", "--tangle", write_temp("tangle", explicit_family)});
  EXPECT_EQ(file.code, 0) << file.out;
}

TEST(Cli, TutteAndConfiguration) {
  auto t = run({"tutte", "fig1_M"});
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(t.parsed().at("terms").size(), 7u);
  auto c = run({"config", "fig2_N"});
  EXPECT_EQ(c.parsed().at("nodes").size(), 5u);
}

TEST(Cli, SuiteIsDeterministicForASeed) {
  const std::vector<std::string> args{"--seed", "3", "--trials", "20", "verify", "--suite", "equivalences"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.parsed().at("checks"), b.parsed().at("checks"));
}

TEST(Cli, FiguresSuitePasses) {
  auto r = run({"verify", "--suite", "figures"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.parsed().at("passed").get<bool>());
}

TEST(Cli, Help) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("positroid-search"), std::string::npos);
}
