#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "agilelint/config.hpp"
#include "agilelint/scoring.hpp"
#include "builders.hpp"

namespace agilelint {
namespace {

using namespace agilelint::testing;

MetricResult result(std::string metric, std::optional<double> score, Severity severity, std::string sprint = "s1") {
  MetricResult r;
  r.metric = std::move(metric);
  r.team = "A";
  r.sprint = std::move(sprint);
  r.severity = severity;
  if (score) r.score = Score(*score);
  return r;
}

TEST(Aggregate, SingleMetricIgnoresWeight) {
  std::vector<MetricResult> rs{result("m", 80, Severity::low)};
  auto s = aggregate(rs, default_config());
  EXPECT_EQ(s.overall, 80.0);
}

TEST(Aggregate, WeightedMean) {
  std::vector<MetricResult> rs{result("a", 100, Severity::high), result("b", 50, Severity::low)};
  auto s = aggregate(rs, default_config());
  ASSERT_TRUE(s.overall);
  EXPECT_NEAR(*s.overall, 90.0, 1e-9);
  double shares = 0;
  for (const auto& c : s.contributions) shares += c.weighted_share;
  EXPECT_NEAR(shares, *s.overall, 1e-9);
}

TEST(Aggregate, NotApplicableExcludedAndReported) {
  auto na = result("c", std::nullopt, Severity::high);
  na.diagnostic = "no data";
  std::vector<MetricResult> rs{result("a", 60, Severity::normal), na};
  auto s = aggregate(rs, default_config());
  EXPECT_EQ(s.overall, 60.0);
  ASSERT_EQ(s.skipped.size(), 1u);
  EXPECT_EQ(s.skipped[0].metric, "c");
  EXPECT_EQ(s.skipped[0].reason, "no data");
}

TEST(Aggregate, AllInformationalHasNoOverall) {
  std::vector<MetricResult> rs{result("a", 60, Severity::informational), result("b", 10, Severity::informational)};
  EXPECT_FALSE(aggregate(rs, default_config()).overall);
}

TEST(Aggregate, MissingSeverityWeightIsConfigError) {
  auto config = default_config();
  config.severity_weights.erase(Severity::low);
  std::vector<MetricResult> rs{result("a", 60, Severity::low)};
  EXPECT_THROW(aggregate(rs, config), ConfigError);
}

TEST(Aggregate, MixedSprintsRejected) {
  std::vector<MetricResult> rs{result("a", 60, Severity::low), result("b", 60, Severity::low, "s2")};
  EXPECT_THROW(aggregate(rs, default_config()), std::invalid_argument);
}

TEST(Aggregate, ScaleInvariantBoundedAndOrderFree) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> score(0, 100);
  std::uniform_int_distribution<int> sev(0, 4), count(1, 9);
  for (int round = 0; round < 500; ++round) {
    std::vector<MetricResult> rs;
    const int n = count(gen);
    for (int i = 0; i < n; ++i) rs.push_back(result("m" + std::to_string(i), score(gen), kAllSeverities[sev(gen)]));
    auto base = default_config();
    auto scaled = base;
    for (auto& [s, w] : scaled.severity_weights) w *= 7;
    auto a = aggregate(rs, base);
    auto b = aggregate(rs, scaled);
    ASSERT_EQ(a.overall.has_value(), b.overall.has_value());
    if (!a.overall) continue;
    EXPECT_NEAR(*a.overall, *b.overall, 1e-9);
    double lo = 100, hi = 0;
    for (const auto& c : a.contributions) {
      if (c.weight > 0) {
        lo = std::min(lo, c.score);
        hi = std::max(hi, c.score);
      }
    }
    EXPECT_GE(*a.overall, lo - 1e-9);
    EXPECT_LE(*a.overall, hi + 1e-9);
    std::shuffle(rs.begin(), rs.end(), gen);
    EXPECT_NEAR(*aggregate(rs, base).overall, *a.overall, 1e-9);
  }
}

TEST(Aggregate, SeverityOverrideChangesWeight) {
  // Detectors stamp the effective severity; aggregation just trusts it.
  std::vector<MetricResult> rs{result("a", 100, Severity::high), result("b", 0, Severity::high)};
  EXPECT_EQ(aggregate(rs, default_config()).overall, 50.0);
}

ProjectHistory three_sprints() {
  RawRecords raw;
  for (int i = 1; i <= 3; ++i)
    raw.sprints.push_back(sprint("s" + std::to_string(i), "Sprint " + std::to_string(i),
                                 ts("2015-01-01T00:00:00Z") + std::chrono::hours(24 * 7 * (i - 1)),
                                 ts("2015-01-01T00:00:00Z") + std::chrono::hours(24 * 7 * i)));
  return build_history(raw);
}

TEST(Trend, PointsInDueOrderWithGaps) {
  auto h = three_sprints();
  std::vector<MetricResult> rs{result("m", 70, Severity::normal, "s3"), result("m", 80, Severity::normal, "s1"),
                               result("m", std::nullopt, Severity::normal, "s2")};
  std::vector<TeamSprintScore> scores;
  for (const auto& r : rs) scores.push_back(aggregate(std::span(&r, 1), default_config()));
  auto series = trend(h, rs, scores);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0].metric, "m");
  EXPECT_EQ(series[1].metric, "overall");
  ASSERT_EQ(series[0].points.size(), 3u);
  EXPECT_EQ(series[0].points[0].sprint, "s1");
  EXPECT_EQ(series[0].points[0].score, 80.0);
  EXPECT_FALSE(series[0].points[1].score);
  EXPECT_EQ(series[0].points[2].score, 70.0);
}

TEST(Trend, OverallSequence) {
  auto h = three_sprints();
  std::vector<MetricResult> rs{result("m", 80, Severity::normal, "s1"), result("m", 90, Severity::normal, "s2"),
                               result("m", 70, Severity::normal, "s3")};
  auto scores = aggregate_all(rs, default_config());
  ASSERT_EQ(scores.size(), 3u);
  auto series = trend(h, rs, scores);
  std::vector<double> overall;
  for (const auto& p : series.back().points) overall.push_back(*p.score);
  EXPECT_EQ(overall, (std::vector<double>{80, 90, 70}));
}

TEST(Trend, SingleSprint) {
  RawRecords raw;
  raw.sprints.push_back(sprint("s1", "Sprint 1", ts("2015-01-01T00:00:00Z"), ts("2015-01-08T00:00:00Z")));
  auto h = build_history(raw);
  std::vector<MetricResult> rs{result("m", 50, Severity::low)};
  auto series = trend(h, rs, aggregate_all(rs, default_config()));
  for (const auto& s : series) EXPECT_EQ(s.points.size(), 1u);
}

TEST(TrendCsv, FormatAndQuoting) {
  RawRecords raw;
  raw.sprints.push_back(sprint("s1", "Sprint 1, \"final\"", ts("2015-01-01T00:00:00Z"), ts("2015-01-08T00:00:00Z")));
  raw.sprints.push_back(sprint("s2", "Sprint 2", ts("2015-01-08T00:00:00Z"), ts("2015-01-15T00:00:00Z")));
  auto h = build_history(raw);
  std::vector<MetricResult> rs{result("m", 87.25, Severity::low, "s1"), result("m", std::nullopt, Severity::low, "s2")};
  auto series = trend(h, rs, aggregate_all(rs, default_config()));
  std::ostringstream out;
  write_trend_csv(out, series);
  EXPECT_EQ(out.str(),
            "team,metric,sprint_title,due_on,score\n"
            "A,m,\"Sprint 1, \"\"final\"\"\",2015-01-08T00:00:00Z,87.3\n"
            "A,m,Sprint 2,2015-01-15T00:00:00Z,\n"
            "A,overall,\"Sprint 1, \"\"final\"\"\",2015-01-08T00:00:00Z,87.3\n"
            "A,overall,Sprint 2,2015-01-15T00:00:00Z,\n");
}

TEST(Round1, HalfAwayFromZero) {
  EXPECT_EQ(round1(87.25), 87.3);
  EXPECT_EQ(round1(66.66666), 66.7);
  EXPECT_EQ(round1(100.0), 100.0);
}

}  // namespace
}  // namespace agilelint
