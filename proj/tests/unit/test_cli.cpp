#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "agilelint/cli.hpp"
#include "agilelint/fixtures.hpp"
#include "agilelint/ingest.hpp"
#include "agilelint/version.hpp"
#include "builders.hpp"

namespace agilelint {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace agilelint::testing;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome agilelint_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / fmt::format("agilelint-cli-{}", info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv(cli::kConfigEnv);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  std::string read(const std::string& name) const { return read_file(dir_ / name); }

  // Fixture directory with the given number of sprints, optionally injected.
  std::string fixture(const std::string& name, int sprints, const std::string& injection = "") {
    write(name + "-spec.json", fmt::format(R"({{"seed": 7, "teams": 2, "sprints": {}}})", sprints));
    std::vector<std::string> args{"generate", "--spec", path(name + "-spec.json"), "--out-dir", path(name)};
    if (!injection.empty()) {
      write(name + "-inject.json", injection);
      args.insert(args.end(), {"--inject", path(name + "-inject.json")});
    }
    auto r = agilelint_cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, IngestWritesSnapshotAndCounts) {
  const auto fx = fixture("fx", 2);
  auto r = agilelint_cli({"ingest", "--manifest", fx + "/manifest.json", "--out", path("snap.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t commit_lines = 0;
  std::ifstream commits(fx + "/commits.ndjson");
  for (std::string line; std::getline(commits, line);) commit_lines += !line.empty();
  EXPECT_NE(r.out.find(fmt::format("commits {}\n", commit_lines)), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("sprints 4\n"), std::string::npos);
  auto again = agilelint_cli({"ingest", "--manifest", fx + "/manifest.json", "--out", path("snap2.json")});
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(read("snap.json"), read("snap2.json"));
}

TEST_F(Cli, IngestFromIndividualFlags) {
  const auto fx = fixture("fx", 1);
  auto r = agilelint_cli({"ingest", "--commits", fx + "/commits.ndjson", "--issues", fx + "/issues.json", "--sprints",
                          fx + "/sprints.json", "--out", path("snap.json")});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, IngestFailuresExitTwo) {
  auto missing = agilelint_cli({"ingest", "--commits", path("nope.ndjson"), "--out", path("snap.json")});
  EXPECT_EQ(missing.code, 2);
  auto none = agilelint_cli({"ingest", "--out", path("snap.json")});
  EXPECT_EQ(none.code, 2);
  write("bad.ndjson", "{\"id\":\"a\",\"author\":\"x\",\"authored_at\":\"2015-01-01T00:00:00Z\",\"team\":\"A\"}\n{oops\n");
  auto bad = agilelint_cli({"ingest", "--commits", path("bad.ndjson"), "--out", path("snap.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("bad.ndjson:2"), std::string::npos) << bad.err;
}

TEST_F(Cli, LintCleanFixturePasses) {
  const auto fx = fixture("fx", 2);
  auto r = agilelint_cli({"lint", "--project", fx, "--fail-below", "90"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = json::parse(r.out);
  for (const auto& team : report["teams"]) {
    for (const auto& s : team["sprints"]) {
      EXPECT_EQ(s["overall"], 100.0);
      for (const auto& m : s["metrics"]) EXPECT_EQ(m["score"], 100.0) << m["metric"];
    }
  }
  EXPECT_EQ(report["tool"]["version"], kVersion);
}

TEST_F(Cli, LintInjectedFixtureFailsPolicy) {
  const auto fx = fixture("fx", 2, R"({"last_minute_commits": 2})");
  auto r = agilelint_cli({"lint", "--project", fx, "--fail-below", "100"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("below 100"), std::string::npos);
}

TEST_F(Cli, LintSprintTwelveShowsPercent) {
  auto h = build_history(sprint12_records());
  {
    std::ofstream snap(dir_ / "sprint12.json");
    write_snapshot(snap, h);
  }
  auto r = agilelint_cli({"lint", "--project", path("sprint12.json"), "--sprint", "Sprint 12", "--now",
                          "2015-06-20T12:00:00Z"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = json::parse(r.out);
  const auto& s = report["teams"][0]["sprints"][0];
  EXPECT_EQ(s["title"], "Sprint 12");
  EXPECT_EQ(s["unfinished_stories"]["percent"], 0.2);
  EXPECT_EQ(s["unfinished_stories"]["amount"], 2);
  EXPECT_EQ(s["unfinished_stories"]["total"], 10);
  EXPECT_EQ(s["unfinished_stories"]["issues"], json::parse("[129, 135]"));
}

TEST_F(Cli, LintUnknownSprintAndBadConfig) {
  const auto fx = fixture("fx", 1);
  EXPECT_EQ(agilelint_cli({"lint", "--project", fx, "--sprint", "Sprint 99"}).code, 2);
  write("bad-config.json", R"({"metrics": {"nope": {}}})");
  EXPECT_EQ(agilelint_cli({"lint", "--project", fx, "--config", path("bad-config.json")}).code, 2);
  EXPECT_EQ(agilelint_cli({"lint", "--project", path("missing")}).code, 2);
  EXPECT_EQ(agilelint_cli({"lint", "--project", fx, "--format", "yaml"}).code, 2);
}

TEST_F(Cli, ConfigFromEnvironmentChangesDigest) {
  const auto fx = fixture("fx", 1);
  auto plain = json::parse(agilelint_cli({"lint", "--project", fx}).out);
  write("config.json", R"({"metrics": {"last_minute_commits": {"window_minutes": 30}}})");
  setenv(cli::kConfigEnv, path("config.json").c_str(), 1);
  auto tuned = json::parse(agilelint_cli({"lint", "--project", fx}).out);
  unsetenv(cli::kConfigEnv);
  EXPECT_NE(plain["config_digest"], tuned["config_digest"]);
  EXPECT_EQ(tuned["config"]["metrics"]["last_minute_commits"]["window_minutes"], 30.0);
}

TEST_F(Cli, LintReportsAreByteIdentical) {
  const auto fx = fixture("fx", 2, R"({"duplicate_stories": 2, "silent_fast_pulls": 1})");
  auto a = agilelint_cli({"lint", "--project", fx, "--threads", "1"});
  auto b = agilelint_cli({"lint", "--project", fx, "--threads", "4", "--out", path("report.json")});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(a.out, read("report.json"));
}

TEST_F(Cli, MarkdownListsArtifactsAndPitfalls) {
  const auto fx = fixture("fx", 1, R"({"duplicate_stories": 1})");
  auto r = agilelint_cli({"lint", "--project", fx, "--format", "markdown"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| duplicates |"), std::string::npos);
  EXPECT_NE(r.out.find("story #"), std::string::npos);
  EXPECT_NE(r.out.find("Does not measure:"), std::string::npos);
}

TEST_F(Cli, ScoreWritesTrendCsv) {
  const auto fx = fixture("fx", 3);
  auto r = agilelint_cli({"score", "--project", fx, "--out", path("trend.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(read("trend.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "team,metric,sprint_title,due_on,score");
  std::map<std::string, int> rows;
  while (std::getline(csv, line)) rows[line.substr(0, line.find(',', line.find(',') + 1))]++;
  EXPECT_EQ(rows.size(), 2u * 10u);  // 9 metrics + overall per team
  for (const auto& [key, count] : rows) EXPECT_EQ(count, 3) << key;
  auto again = agilelint_cli({"score", "--project", fx});
  EXPECT_EQ(again.out, read("trend.csv"));
}

TEST_F(Cli, GenerateIsReproducible) {
  const auto a = fixture("a", 2, R"({"hot_files": {"count": 1}})");
  const auto b = fixture("b", 2, R"({"hot_files": {"count": 1}})");
  for (const char* f : {"commits.ndjson", "issues.json", "sprints.json", "pulls.json", "stats.csv", "ledger.json"})
    EXPECT_EQ(read_file(fs::path(a) / f), read_file(fs::path(b) / f)) << f;
  auto ledger = json::parse(read_file(fs::path(a) / "ledger.json"));
  EXPECT_EQ(ledger["metrics"]["collective_code_ownership"].size(), 1u);
}

TEST_F(Cli, GenerateLedgerIdsAreFoundByLint) {
  const auto fx = fixture("fx", 2, R"({"silent_fast_pulls": 2, "tdd_regressions": 1})");
  auto ledger = json::parse(read_file(fs::path(fx) / "ledger.json"));
  auto report = json::parse(agilelint_cli({"lint", "--project", fx}).out);
  std::set<std::string> found, expected;
  for (const auto& [metric, entries] : ledger["metrics"].items())
    for (const auto& e : entries)
      for (const auto& a : e["artifacts"])
        expected.insert(fmt::format("{}:{}:{}:{}", e["team"].get<std::string>(), e["sprint"].get<std::string>(), metric,
                                    a["id"].get<std::string>()));
  for (const auto& team : report["teams"])
    for (const auto& s : team["sprints"])
      for (const auto& m : s["metrics"])
        for (const auto& v : m["violations"])
          for (const auto& a : v["artifacts"])
            found.insert(fmt::format("{}:{}:{}:{}", team["team"].get<std::string>(), s["sprint"].get<std::string>(),
                                     m["metric"].get<std::string>(), a["id"].get<std::string>()));
  EXPECT_EQ(found, expected);
  EXPECT_EQ(expected.size(), 3u);
}

TEST_F(Cli, GenerateInfeasibleExitsTwo) {
  write("spec.json", R"({"developers_per_team": 1})");
  auto r = agilelint_cli({"generate", "--spec", path("spec.json"), "--out-dir", path("out")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("infeasible"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(agilelint_cli({}).code, 2);
  EXPECT_EQ(agilelint_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(agilelint_cli({"lint"}).code, 2);
  EXPECT_EQ(agilelint_cli({"--help"}).code, 0);
}

}  // namespace
}  // namespace agilelint
