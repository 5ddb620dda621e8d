#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agilelint/config.hpp"
#include "agilelint/history.hpp"
#include "agilelint/model.hpp"

namespace agilelint {

struct Contribution {
  std::string metric;
  double score = 0.0;
  Severity severity = Severity::normal;
  double weight = 0.0;
  double weighted_share = 0.0;  // weight * score / total weight
};

struct SkippedMetric {
  std::string metric;
  std::string reason;
};

/// Severity-weighted mean of the applicable metric scores of one team in one
/// sprint. `overall` is absent when no metric carries positive weight.
struct TeamSprintScore {
  TeamId team;
  SprintId sprint;
  std::optional<double> overall;
  std::vector<Contribution> contributions;
  std::vector<SkippedMetric> skipped;
};

/// Throws std::invalid_argument when results mix teams or sprints, and
/// ConfigError when a severity has no weight. Results may be in any order;
/// contributions are reported in the order given.
TeamSprintScore aggregate(std::span<const MetricResult> results, const MetricConfig& config);

/// Groups run_all output by team and sprint and aggregates each group.
std::vector<TeamSprintScore> aggregate_all(std::span<const MetricResult> results, const MetricConfig& config);

/// Rounds half away from zero to one decimal, the precision of every report.
double round1(double value);

inline constexpr std::string_view kOverallSeries = "overall";

struct TrendPoint {
  SprintId sprint;
  std::string sprint_title;
  Timestamp due_on{};
  std::optional<double> score;  // absent: gap, never interpolated
};

struct TrendSeries {
  TeamId team;
  std::string metric;  // metric name or "overall"
  std::vector<TrendPoint> points;
};

/// One series per (team, metric) and one overall series per team, every
/// sprint of the team present in due_on order. Series follow team order, then
/// first appearance of the metric in `results`, with overall last.
std::vector<TrendSeries> trend(const ProjectHistory& history, std::span<const MetricResult> results,
                               std::span<const TeamSprintScore> scores);

/// CSV with header "team,metric,sprint_title,due_on,score"; gaps leave the
/// score empty, scores carry one decimal.
void write_trend_csv(std::ostream& out, std::span<const TrendSeries> series);

}  // namespace agilelint
