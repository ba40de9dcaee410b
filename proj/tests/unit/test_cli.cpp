#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "combs/io.hpp"

using namespace combs;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

auto run_cli(std::vector<std::string> args) -> Outcome {
  args.insert(args.begin(), "combs-cli");
  auto out = std::ostringstream{};
  auto err = std::ostringstream{};
  auto code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

auto temp_path(const std::string& name) -> std::string {
  return (std::filesystem::temp_directory_path() / ("combs_cli_test_" + name)).string();
}

void write_text(const std::string& path, const std::string& text) {
  auto f = std::ofstream{path, std::ios::binary};
  f << text;
}

}  // namespace

TEST(Cli, KingmanCombIsDeterministic) {
  auto a = run_cli({"--seed", "7", "kingman-comb", "--n-teeth", "12"});
  auto b = run_cli({"kingman-comb", "--seed", "7", "--n-teeth", "12"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto c = run_cli({"--seed", "8", "kingman-comb", "--n-teeth", "12"});
  EXPECT_NE(a.out, c.out);
  auto comb = comb_from_json(json::parse(a.out));
  EXPECT_EQ(comb.teeth().size(), 12u);
}

TEST(Cli, SingleToothCombHasTwoEvents) {
  auto r = run_cli({"kingman-comb", "--n-teeth", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["events"].size(), 2u);
}

TEST(Cli, LambdaSimEdgeCases) {
  auto one = run_cli({"lambda-sim", "--n", "1"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(json::parse(one.out)["events"].size(), 1u);
  auto star = run_cli({"lambda-sim", "--lambda", "dirac:1", "--n", "6"});
  ASSERT_EQ(star.code, 0) << star.err;
  auto events = json::parse(star.out)["events"];
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[1]["blocks"].size(), 1u);
  auto ordered = run_cli({"lambda-sim", "--n", "5", "--ordered"});
  EXPECT_EQ(ordered.code, 0) << ordered.err;
  EXPECT_EQ(run_cli({"lambda-sim", "--lambda", "beta:0,1"}).code, 2);
}

TEST(Cli, PaintboxFormats) {
  auto j = run_cli({"paintbox", "--n", "5"});
  ASSERT_EQ(j.code, 0) << j.err;
  EXPECT_EQ(json::parse(j.out)["positions"].size(), 5u);
  auto csv = run_cli({"--format", "csv", "paintbox", "--n", "4"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 4);
  EXPECT_EQ(run_cli({"--format", "svg", "paintbox"}).code, 2);
}

TEST(Cli, LambdaCombAndEvolve) {
  auto lc = run_cli({"lambda-comb", "--steps", "4", "--m", "200", "--t", "2"});
  ASSERT_EQ(lc.code, 0) << lc.err;
  EXPECT_NO_THROW(comb_from_json(json::parse(lc.out)));
  auto ev = run_cli({"evolve", "--steps", "3", "--n-teeth", "30"});
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_EQ(json::parse(ev.out)["frames"].size(), 4u);
  EXPECT_EQ(run_cli({"evolve", "--s", "0"}).code, 2);
}

TEST(Cli, BackboneFromCsv) {
  auto path = temp_path("ums.csv");
  write_text(path, "0,0.5,0.5\n0.5,0,0.1\n0.5,0.1,0\n1,0,0\n");
  auto r = run_cli({"backbone", "--ums", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["height"], json::parse("[0, 0.5, 0.5]"));
  EXPECT_EQ(j["star"][1][2], 0.5);
  std::filesystem::remove(path);
}

TEST(Cli, VerifySuites) {
  for (auto suite : {"intertwining", "star-metric"}) {
    auto r = run_cli({"verify", "--suite", suite});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());
    EXPECT_NE(r.err.find("PASS"), std::string::npos);
  }
  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"--format", "xml", "kingman-comb"}).code, 2);
  EXPECT_EQ(run_cli({"render"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, UnwritableOutput) {
  auto r = run_cli({"--out", "/nonexistent-dir/x/comb.json", "kingman-comb"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

TEST(Cli, MalformedJsonReportsLocation) {
  auto path = temp_path("bad.json");
  write_text(path, "{\"events\": [\n  {\"t\": 0,, }\n]}");
  auto r = run_cli({"render", "--comb", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, RenderIsByteStable) {
  auto comb_path = temp_path("comb.json");
  auto svg_path = temp_path("comb.svg");
  ASSERT_EQ(run_cli({"--seed", "3", "--out", comb_path, "kingman-comb", "--n-teeth", "15"}).code, 0);
  auto a = run_cli({"render", "--comb", comb_path});
  auto b = run_cli({"--out", svg_path, "render", "--comb", comb_path});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  auto in = std::ifstream{svg_path, std::ios::binary};
  auto ss = std::ostringstream{};
  ss << in.rdbuf();
  EXPECT_EQ(a.out, ss.str());
  auto direct = run_cli({"--seed", "3", "--format", "svg", "kingman-comb", "--n-teeth", "15"});
  EXPECT_EQ(direct.out, a.out);
  std::filesystem::remove(comb_path);
  std::filesystem::remove(svg_path);
}
