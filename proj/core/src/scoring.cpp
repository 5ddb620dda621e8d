#include "agilelint/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace agilelint {

double round1(double value) { return std::round(value * 10.0) / 10.0; }

TeamSprintScore aggregate(std::span<const MetricResult> results, const MetricConfig& config) {
  TeamSprintScore out;
  if (!results.empty()) {
    out.team = results.front().team;
    out.sprint = results.front().sprint;
  }
  double total_weight = 0.0;
  double weighted_sum = 0.0;
  for (const auto& r : results) {
    if (r.team != out.team || r.sprint != out.sprint)
      throw std::invalid_argument(fmt::format("cannot aggregate {}/{} with {}/{}", out.team, out.sprint, r.team, r.sprint));
    const double weight = config.severity_weight(r.severity);
    if (!r.score) {
      out.skipped.push_back({r.metric, r.diagnostic.empty() ? "not applicable" : r.diagnostic});
      continue;
    }
    out.contributions.push_back({r.metric, r.score->value(), r.severity, weight, 0.0});
    total_weight += weight;
    weighted_sum += weight * r.score->value();
  }
  if (total_weight > 0.0) {
    out.overall = std::clamp(weighted_sum / total_weight, 0.0, 100.0);
    for (auto& c : out.contributions) c.weighted_share = c.weight * c.score / total_weight;
  }
  return out;
}

std::vector<TeamSprintScore> aggregate_all(std::span<const MetricResult> results, const MetricConfig& config) {
  std::vector<TeamSprintScore> out;
  std::size_t begin = 0;
  while (begin < results.size()) {
    std::size_t end = begin + 1;
    while (end < results.size() && results[end].team == results[begin].team &&
           results[end].sprint == results[begin].sprint)
      ++end;
    out.push_back(aggregate(results.subspan(begin, end - begin), config));
    begin = end;
  }
  return out;
}

std::vector<TrendSeries> trend(const ProjectHistory& history, std::span<const MetricResult> results,
                               std::span<const TeamSprintScore> scores) {
  std::vector<TrendSeries> out;
  for (const auto& team : history.teams()) {
    const auto sprints = history.sprints_of(team);
    if (sprints.empty()) continue;

    std::vector<std::string> metric_order;
    std::map<std::pair<std::string, SprintId>, std::optional<double>> values;
    for (const auto& r : results) {
      if (r.team != team) continue;
      if (std::find(metric_order.begin(), metric_order.end(), r.metric) == metric_order.end())
        metric_order.push_back(r.metric);
      values[{r.metric, r.sprint}] = r.score ? std::optional<double>(r.score->value()) : std::nullopt;
    }
    for (const auto& s : scores) {
      if (s.team == team) values[{std::string(kOverallSeries), s.sprint}] = s.overall;
    }
    metric_order.emplace_back(kOverallSeries);

    for (const auto& metric : metric_order) {
      TrendSeries series{team, metric, {}};
      for (const Sprint* sprint : sprints) {
        TrendPoint p{sprint->id, sprint->title, sprint->due_on, std::nullopt};
        if (auto it = values.find({metric, sprint->id}); it != values.end()) p.score = it->second;
        series.points.push_back(std::move(p));
      }
      out.push_back(std::move(series));
    }
  }
  return out;
}

namespace {

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string quoted = "\"";
  for (const char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

void write_trend_csv(std::ostream& out, std::span<const TrendSeries> series) {
  out << "team,metric,sprint_title,due_on,score\n";
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      out << csv_field(s.team) << ',' << csv_field(s.metric) << ',' << csv_field(p.sprint_title) << ','
          << format_timestamp(p.due_on) << ',';
      if (p.score) out << fmt::format("{:.1f}", round1(*p.score));
      out << '\n';
    }
  }
}

}  // namespace agilelint
