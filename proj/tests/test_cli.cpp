#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "endlab/commands.hpp"

using namespace endlab;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = ENDLAB_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json shipped(const std::string& name) { return Json::parse(slurp(kSource / "configs" / name)); }

Json minimal_f2() {
  return Json::parse(R"({
    "seed": 7,
    "lambda": [0.5],
    "group": {"factors": [{"name": "a", "kind": "free_abelian", "rank": 1},
                          {"name": "b", "kind": "free_abelian", "rank": 1}]},
    "measure": [{"word": "a", "probability": "1/4"}, {"word": "a^-1", "probability": "1/4"},
                {"word": "b", "probability": 0.25}, {"word": "b^-1", "probability": 0.25}]
  })");
}

std::vector<Violation> violations_of(const Json& j) {
  try {
    parse_config_json(j);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

bool has_location(const std::vector<Violation>& v, const std::string& loc) {
  for (const auto& x : v)
    if (x.location == loc) return true;
  return false;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("endlab-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("ENDLAB_CLI");
  if (!cli) return -1;
  const int status = std::system((std::string(cli) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ParseConfig, MinimalFreeGroupWalk) {
  const auto c = parse_config_json(minimal_f2());
  EXPECT_EQ(c.seed, 7u);
  ASSERT_EQ(c.measure.size(), 4u);
  EXPECT_DOUBLE_EQ(c.measure[0].probability, 0.25);
  EXPECT_EQ(c.lambdas, std::vector<double>{0.5});
}

TEST(ParseConfig, LambdaOutsideUnitIntervalNamesField) {
  auto j = minimal_f2();
  j["lambda"] = {0.5, 1.5};
  const auto v = violations_of(j);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].location, "/lambda/1");
}

TEST(ParseConfig, NonGeneratingMeasureRejected) {
  auto j = minimal_f2();
  j["measure"] = Json::parse(R"([{"word": "a", "probability": 1}])");
  const auto v = violations_of(j);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].location, "/measure");
  EXPECT_NE(v[0].message.find("not admissible"), std::string::npos);
  EXPECT_NE(v[0].message.find("b"), std::string::npos);
}

TEST(ParseConfig, ReportsEveryViolation) {
  auto j = minimal_f2();
  j.erase("seed");
  j["lambda"] = {0.0};
  j["budgets"] = {{"N", 0}, {"sphere_depth", "deep"}};
  j["typo"] = 1;
  const auto v = violations_of(j);
  EXPECT_EQ(v.size(), 5u);
  for (const char* loc : {"/seed", "/lambda/0", "/budgets/N", "/budgets/sphere_depth", "/typo"}) EXPECT_TRUE(has_location(v, loc)) << loc;
}

TEST(ParseConfig, MalformedFactorTableLocated) {
  auto j = shipped("z3z3.json");
  j["group"]["factors"][1]["table"][2] = {2, 0, 2};
  const auto v = violations_of(j);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].location, "/group/factors/1");
}

TEST(ParseConfig, MalformedJson) {
  EXPECT_THROW(parse_config("{\"seed\": 1,"), ValidationError);
}

TEST(ParseConfig, EchoReparsesToEqualConfig) {
  for (const char* name : {"f2.json", "z3z3.json", "z2z.json", "tree-binary.json"}) {
    const auto c = parse_config_json(shipped(name));
    EXPECT_EQ(parse_config_json(to_json(c)), c) << name;
    EXPECT_EQ(to_json(parse_config_json(to_json(c))).dump(), to_json(c).dump()) << name;
  }
}

TEST(RunCommand, TreeDimensionOfBinaryTreeIsOne) {
  const auto r = run_command(parse_config_json(shipped("tree-binary.json")), "tree-dim");
  EXPECT_DOUBLE_EQ(r.results["tree"]["value"].get<double>(), 1.0);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.truncated());
}

TEST(RunCommand, EstimateReportsDriftEntropyGrowthAndGuivarch) {
  auto j = minimal_f2();
  j["budgets"] = {{"N", 400}, {"M", 2000}, {"convolution_depth", 10}, {"sphere_depth", 16}};
  const auto r = run_command(parse_config_json(j), "estimate");
  for (const char* key : {"drift", "entropy", "growth", "guivarch"}) EXPECT_TRUE(r.results.contains(key)) << key;
  EXPECT_NEAR(r.results["drift"]["value"].get<double>(), 0.5, 0.02);
  EXPECT_TRUE(r.results["guivarch"]["holds"].get<bool>());
  bool has_check = false;
  for (const auto& c : r.checks) has_check = has_check || c.name == "guivarch";
  EXPECT_TRUE(has_check);
}

TEST(RunCommand, UnknownCommandRejected) {
  EXPECT_THROW(run_command(parse_config_json(minimal_f2()), "plot"), ValidationError);
}

TEST(RunCommand, PropertiesOnZ3Z3SmallBudgetsPass) {
  auto j = shipped("z3z3.json");
  j["properties"] = {{"instances", 300}, {"walk_length", 120}, {"window_cap", 60000}, {"refine_cap", 300000}, {"convolution_depth", 6},
                     {"entropy_depth", 12}};
  const auto r = run_command(parse_config_json(j), "properties");
  EXPECT_FALSE(r.truncated());
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_EQ(r.results["suites_failed"].get<int>(), 0);
  EXPECT_GE(r.results["suites_passed"].get<int>(), 20);
}

TEST(EmitReport, SameConfigTwiceIsByteIdentical) {
  auto j = minimal_f2();
  j["budgets"] = {{"N", 300}, {"M", 500}, {"convolution_depth", 6}, {"sphere_depth", 12}};
  j["tracking"] = {{"N", 400}, {"M", 300}, {"stride", 20}, {"compare", {20, 200}}};
  const auto c = parse_config_json(j);
  const auto a = scratch("a"), b = scratch("b");
  for (const char* command : {"estimate", "tracking"}) {
    emit_report(run_command(c, command), a, {});
    emit_report(run_command(c, command), b, {});
  }
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const auto name = e.path().filename().string();
    EXPECT_NE(name.find("-s7"), std::string::npos) << name;
    if (name.find(".timing.") != std::string::npos) continue;
    EXPECT_EQ(slurp(e.path()), slurp(b / name)) << name;
    ++compared;
  }
  EXPECT_EQ(compared, 5u);  // 2 JSON reports, 3 CSV tables
}

TEST(EmitReport, FileNamesEmbedHashAndSeed) {
  const auto c = parse_config_json(shipped("tree-binary.json"));
  const auto r = run_command(c, "tree-dim");
  EXPECT_EQ(r.config_hash, config_hash(to_json(c)));
  const auto paths = emit_report(r, scratch("names"), parse_formats("json"));
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].filename().string(), "tree-dim-" + r.config_hash + "-s1.json");
  EXPECT_THROW(parse_formats("json,xml"), ValidationError);
}

TEST(EmitReport, PartialRunMarkedTruncated) {
  auto j = shipped("f2.json");
  j["budgets"]["vertex_cap"] = 20000;
  const auto r = run_command(parse_config_json(j), "boundary-dim");
  ASSERT_TRUE(r.truncated());
  const auto payload = to_json(r);
  EXPECT_EQ(payload["truncated"], true);
  EXPECT_FALSE(payload["truncation"].empty());
}

TEST(EmitReport, CsvCellsRoundTripDoubles) {
  EXPECT_EQ(csv_cell(Json(0.1)), "0.1");
  EXPECT_EQ(std::stod(csv_cell(Json(1.0 / 3.0))), 1.0 / 3.0);
  EXPECT_EQ(csv_cell(Json("a,b")), "\"a,b\"");
  EXPECT_EQ(csv_cell(Json()), "");
}

TEST(Cli, ExitCodes) {
  if (!std::getenv("ENDLAB_CLI")) GTEST_SKIP() << "ENDLAB_CLI not set";
  const auto dir = scratch("cli");
  const auto write = [&](const std::string& name, const Json& j) {
    std::ofstream(dir / name) << j.dump();
    return (dir / name).string();
  };
  const std::string out = " --out " + (dir / "out").string();
  auto tree = shipped("tree-binary.json");
  EXPECT_EQ(run_cli("tree-dim --config " + write("ok.json", tree) + out), 0);
  auto bad = tree;
  bad["lambda"] = {1.5};
  EXPECT_EQ(run_cli("tree-dim --config " + write("bad.json", bad) + out), 2);
  EXPECT_EQ(run_cli("tree-dim --config " + (dir / "missing.json").string() + out), 1);
  EXPECT_EQ(run_cli("frobnicate --config " + write("ok2.json", tree) + out), 2);
  auto wrong = tree;
  wrong["tree"]["expected"] = 2.0;
  EXPECT_EQ(run_cli("tree-dim --config " + write("wrong.json", wrong) + out), 4);
  auto capped = shipped("z3z3.json");
  capped["budgets"]["vertex_cap"] = 500;
  EXPECT_EQ(run_cli("boundary-dim --config " + write("capped.json", capped) + out), 3);
}
