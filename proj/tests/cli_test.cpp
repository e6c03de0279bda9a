#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clustertess/app.hpp"
#include "clustertess/pipeline.hpp"
#include "clustertess/records.hpp"

using namespace ctess;
using namespace ctess::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "clustertess");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("clustertess_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Compares against tests/golden/<name>; CTESS_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const std::string& actual) {
  const fs::path path = fs::path(CTESS_GOLDEN_DIR) / name;
  if (const char* u = std::getenv("CTESS_UPDATE_GOLDEN"); u && std::string(u) == "1") {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << path << " missing; rerun with CTESS_UPDATE_GOLDEN=1";
  EXPECT_EQ(slurp(path), actual) << "golden mismatch: " << name;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

const std::vector<std::string> kDelone{"--lambda", "30", "--seed", "11", "--property", "delone",
                                       "--radius-cap", "0.3", "--coverage-samples", "500"};

}  // namespace

TEST(Records, RoundTripIsBitExact) {
  const auto r = run({"--lambda", "40", "--seed", "5", "--replications", "3", "--property", "delone",
                      "--coverage-samples", "300", "tessellate"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  const auto records = read_records(in);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records_to_text(records), r.out);
  for (const auto& rec : records) ASSERT_TRUE(rec.clusters.has_value());
}

TEST(Records, ReadErrorNamesTheLine) {
  std::istringstream in("{\"replication\":0}\n");
  try {
    read_records(in);
    FAIL();
  } catch (const RecordError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
  }
}

TEST(ExitCodes, ConfigErrors) {
  EXPECT_EQ(run({"--lambda", "-1", "sample"}).code, kConfigError);
  EXPECT_EQ(run({"--dimension", "0", "sample"}).code, kConfigError);
  EXPECT_EQ(run({"--property", "nonsense", "sample"}).code, kConfigError);
  EXPECT_EQ(run({"--no-such-flag", "sample"}).code, kConfigError);
  EXPECT_EQ(run({"--property", "none", "tessellate"}).code, kConfigError);
  EXPECT_EQ(run({"--process", "barycentre", "--epsilon", "0.6", "sample"}).code, kConfigError);
}

TEST(ExitCodes, MalformedInputIsRuntimeError) {
  const auto r = run({"--property", "delone", "tessellate", "--input", "-"}, "not json\n");
  EXPECT_EQ(r.code, kRuntimeError);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST(ExitCodes, ValidateFailsOnOverlap) {
  const std::string record =
      R"({"replication":0,"dimension":2,"window":{"low":[0,0],"high":[2,2],"buffer_margin":0},)"
      R"("points":[],"multiplicities":[],"clusters":[)"
      R"({"points":[[0,0],[1,0],[0,1]],"boundary_uncertain":false},)"
      R"({"points":[[0.2,0.2],[1.2,0.2],[0.2,1.2]],"boundary_uncertain":false}],"report":null})"
      "\n";
  const auto r = run({"--coverage-samples", "100", "validate", "--input", "-"}, record);
  EXPECT_EQ(r.code, kTestFailure) << r.err;
  EXPECT_NE(r.err.find("FAIL"), std::string::npos);
}

TEST(ExitCodes, ValidatePassesOnDelone) {
  auto args = kDelone;
  args.push_back("tessellate");
  const auto t = run(args);
  ASSERT_EQ(t.code, kOk);
  const auto v = run({"--coverage-samples", "300", "validate", "--input", "-"}, t.out);
  EXPECT_EQ(v.code, kOk) << v.err;
}

TEST(Config, FileIsOverriddenByFlags) {
  const auto dir = scratch_dir("config");
  const auto cfg = dir / "run.toml";
  std::ofstream(cfg) << "lambda = 25\nseed = 9\nwindow = [0, 0, 2, 2]\nbuffer_margin = 0.1\n";
  const auto a = run({"--config", cfg.string(), "sample"});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_NE(a.out.find(R"("high":[2.0,2.0],"buffer_margin":0.1)"), std::string::npos) << a.out;
  const auto b = run({"--config", cfg.string(), "--seed", "10", "sample"});
  const auto c = run({"--lambda", "25", "--seed", "10", "--window", "0,0,2,2", "--buffer-margin", "0.1",
                      "sample"});
  EXPECT_NE(a.out, b.out);
  EXPECT_EQ(b.out, c.out);
}

TEST(Config, SeedFromEnvironment) {
  const auto flag = run({"--seed", "77", "sample"});
  ::setenv("CLUSTER_TESS_SEED", "77", 1);
  const auto env = run({"sample"});
  const auto both = run({"--seed", "78", "sample"});
  ::unsetenv("CLUSTER_TESS_SEED");
  EXPECT_EQ(flag.out, env.out);
  EXPECT_NE(flag.out, both.out);
}

TEST(Reproducibility, SameSeedSameBytes) {
  const auto dir = scratch_dir("repro");
  for (const char* name : {"a", "b"}) {
    auto args = kDelone;
    args.insert(args.end(), {"--replications", "2", "--output", (dir / name).string() + ".ndjson",
                             "--summary", (dir / name).string() + ".json", "tessellate"});
    ASSERT_EQ(run(args).code, kOk);
  }
  EXPECT_EQ(slurp(dir / "a.ndjson"), slurp(dir / "b.ndjson"));
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  EXPECT_FALSE(slurp(dir / "a.ndjson").empty());
}

TEST(Chain, DeterministicFixture) {
  const auto r = run({"--range", "0", "12", "chain", "--variant", "deterministic"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find(R"("vertices":[0.0,2.414213562373095,3.414213562373095,5.82842712474619,)"),
            std::string::npos)
      << r.out;
}

TEST(Render, EmptyConfigurationShowsOnlyTheFrame) {
  const auto s = run({"--process", "lattice", "--spacing", "2", "--window", "0.5,0.5,1.5,1.5", "sample"});
  ASSERT_EQ(s.code, kOk);
  const auto r = run({"render", "--input", "-", "--style", "plain"}, s.out);
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(count(r.out, "<circle"), 0u);
  EXPECT_EQ(count(r.out, "<polygon"), 0u);
  EXPECT_EQ(count(r.out, "<rect"), 1u);
  expect_golden("empty.svg", r.out);
}

TEST(Render, HardcoreDrawsHalfRadiusDiscs) {
  const auto t = run({"--lambda", "20", "--seed", "4", "--property", "hardcore", "--r", "0.1",
                      "--coverage-samples", "100", "tessellate"});
  ASSERT_EQ(t.code, kOk) << t.err;
  std::istringstream in(t.out);
  const auto rec = read_records(in).at(0);
  const auto r = run({"--r", "0.1", "render", "--input", "-", "--style", "hardcore"}, t.out);
  ASSERT_EQ(r.code, kOk) << r.err;
  // One disc per cluster plus one dot per point.
  EXPECT_EQ(count(r.out, "<circle"), rec.clusters->size() + rec.points.size());
  // r/2 = 0.05 of a 560 px unit square.
  EXPECT_EQ(count(r.out, R"(r="28.000")"), rec.clusters->size());
  expect_golden("hardcore.svg", r.out);
}

TEST(Golden, DeloneTessellation) {
  auto args = kDelone;
  args.push_back("tessellate");
  const auto t = run(args);
  ASSERT_EQ(t.code, kOk);
  expect_golden("delone.ndjson", t.out);
  const auto r = run({"render", "--input", "-", "--style", "delone"}, t.out);
  ASSERT_EQ(r.code, kOk) << r.err;
  expect_golden("delone.svg", r.out);
}

TEST(Golden, SilverStrip) {
  const auto r = run({"--range", "0", "12", "render", "--style", "silver"});
  ASSERT_EQ(r.code, kOk) << r.err;
  expect_golden("silver_strip.svg", r.out);
}

TEST(Outputs, FailedCommitLeavesNoFiles) {
  const auto dir = scratch_dir("partial");
  OutputSet set;
  set.add((dir / "records.ndjson").string(), "x\n");
  set.add((dir / "missing" / "summary.json").string(), "{}\n");
  std::ostringstream out;
  EXPECT_ANY_THROW(set.commit(out));
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST(Outputs, UnwritableSummaryFailsTheRun) {
  const auto dir = scratch_dir("partial_cli");
  const auto r = run({"--output", (dir / "records.ndjson").string(), "--summary",
                      (dir / "missing" / "summary.json").string(), "sample"});
  EXPECT_EQ(r.code, kRuntimeError);
  EXPECT_TRUE(fs::is_empty(dir));
}
