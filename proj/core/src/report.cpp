#include "agilelint/report.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "agilelint/version.hpp"

namespace agilelint {

using nlohmann::json;

namespace {

json rounded(std::optional<double> value) {
  if (!value) return nullptr;
  return round1(*value);
}

json score_json(const std::optional<Score>& score) {
  if (!score) return nullptr;
  return round1(score->value());
}

json artifacts_json(const std::vector<ArtifactRef>& artifacts) {
  json out = json::array();
  for (const auto& a : artifacts) out.push_back({{"kind", to_string(a.kind)}, {"id", a.id}});
  return out;
}

json result_json(const MetricResult& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json entry = {{"artifacts", artifacts_json(v.artifacts)}, {"detail", v.detail}};
    if (!v.numeric_detail.empty()) entry["values"] = v.numeric_detail;
    violations.push_back(std::move(entry));
  }
  json out = {{"metric", r.metric},
              {"severity", to_string(r.severity)},
              {"score", score_json(r.score)},
              {"inputs", r.inputs_echo},
              {"violations", std::move(violations)}};
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  return out;
}

json unfinished_json(const UnfinishedStories& u) {
  return {{"amount", u.amount},
          {"issues", u.stories},
          {"total", u.total},
          {"percent", u.percent ? json(*u.percent) : json(nullptr)}};
}

std::string score_text(std::optional<double> value) {
  return value ? fmt::format("{:.1f}", round1(*value)) : std::string("n/a");
}

std::string artifact_text(const ArtifactRef& a) {
  switch (a.kind) {
    case ArtifactKind::story:
    case ArtifactKind::pull_request:
      return fmt::format("{} #{}", to_string(a.kind), a.id);
    default:
      return fmt::format("{} `{}`", to_string(a.kind), a.id);
  }
}

}  // namespace

RunReport lint(const MetricRegistry& registry, const ProjectHistory& history, const MetricConfig& config,
               const LintOptions& options) {
  config.validate();
  RunReport report;
  report.tool_version = kVersion;
  report.config_digest = config_digest(config);
  report.config = to_json(config);

  std::vector<MetricResult> all = run_all(registry, history, config, options.threads);
  if (options.sprint_title) {
    std::vector<SprintId> selected;
    for (const auto& s : history.sprints()) {
      if (s.title == *options.sprint_title) selected.push_back(s.id);
    }
    if (selected.empty()) throw LookupError(fmt::format("no sprint titled '{}'", *options.sprint_title));
    std::erase_if(all, [&](const MetricResult& r) {
      return std::find(selected.begin(), selected.end(), r.sprint) == selected.end();
    });
  }
  report.scores = aggregate_all(all, config);

  Timestamp now{};
  if (options.now) {
    now = *options.now;
  } else {
    for (const auto& s : history.sprints()) now = std::max(now, s.due_on + std::chrono::seconds(1));
  }
  for (const auto& s : history.sprints()) {
    if (options.sprint_title && s.title != *options.sprint_title) continue;
    if (auto u = unfinished_stories(history, s.id, now)) report.unfinished.push_back(std::move(*u));
  }

  report.diagnostics = history.diagnostics();
  for (const auto& r : all) {
    if (!r.diagnostic.empty())
      report.diagnostics.push_back(fmt::format("{} {}/{}: {}", r.metric, r.team, r.sprint, r.diagnostic));
  }
  report.results = std::move(all);
  return report;
}

RunReport lint(const ProjectHistory& history, const MetricConfig& config, const LintOptions& options) {
  return lint(builtin_registry(), history, config, options);
}

json to_json(const RunReport& report, const ProjectHistory& history) {
  // Group everything under team, then sprint in due order.
  std::map<SprintId, json> by_sprint;
  auto sprint_entry = [&](const SprintId& id) -> json& {
    auto it = by_sprint.find(id);
    if (it != by_sprint.end()) return it->second;
    const Sprint* s = history.find_sprint(id);
    json entry = {{"sprint", id},
                  {"title", s != nullptr ? s->title : std::string()},
                  {"due_on", s != nullptr ? format_timestamp(s->due_on) : std::string()},
                  {"metrics", json::array()},
                  {"overall", nullptr},
                  {"contributions", json::array()},
                  {"skipped", json::array()},
                  {"unfinished_stories", nullptr}};
    return by_sprint.emplace(id, std::move(entry)).first->second;
  };
  for (const auto& r : report.results) sprint_entry(r.sprint)["metrics"].push_back(result_json(r));
  for (const auto& sc : report.scores) {
    json& entry = sprint_entry(sc.sprint);
    entry["overall"] = rounded(sc.overall);
    for (const auto& c : sc.contributions) {
      entry["contributions"].push_back({{"metric", c.metric},
                                        {"score", round1(c.score)},
                                        {"severity", to_string(c.severity)},
                                        {"weight", c.weight},
                                        {"weighted_share", round1(c.weighted_share)}});
    }
    for (const auto& s : sc.skipped) entry["skipped"].push_back({{"metric", s.metric}, {"reason", s.reason}});
  }
  for (const auto& u : report.unfinished) sprint_entry(u.sprint)["unfinished_stories"] = unfinished_json(u);

  json teams = json::array();
  for (const auto& team : history.teams()) {
    json sprints = json::array();
    for (const Sprint* s : history.sprints_of(team)) {
      auto it = by_sprint.find(s->id);
      if (it != by_sprint.end()) sprints.push_back(std::move(it->second));
    }
    if (!sprints.empty()) teams.push_back({{"team", team}, {"sprints", std::move(sprints)}});
  }
  return {{"tool", {{"name", "agilelint"}, {"version", report.tool_version}}},
          {"config_digest", report.config_digest},
          {"config", report.config},
          {"teams", std::move(teams)},
          {"diagnostics", report.diagnostics}};
}

std::string render_json(const RunReport& report, const ProjectHistory& history) {
  return to_json(report, history).dump(2) + "\n";
}

std::string render_markdown(const RunReport& report, const ProjectHistory& history, const MetricRegistry& registry) {
  std::string out = fmt::format("# agilelint report\n\nVersion {}, config `{}`\n", report.tool_version,
                                report.config_digest.substr(0, 16));
  std::map<std::pair<TeamId, SprintId>, const TeamSprintScore*> scores;
  for (const auto& sc : report.scores) scores[{sc.team, sc.sprint}] = &sc;
  std::map<SprintId, const UnfinishedStories*> unfinished;
  for (const auto& u : report.unfinished) unfinished[u.sprint] = &u;

  std::size_t i = 0;
  while (i < report.results.size()) {
    const MetricResult& first = report.results[i];
    const Sprint* sprint = history.find_sprint(first.sprint);
    out += fmt::format("\n## {} / {}\n\n", first.team, sprint != nullptr ? sprint->title : first.sprint);
    auto sc = scores.find({first.team, first.sprint});
    out += fmt::format("Overall: **{}**\n\n", score_text(sc != scores.end() ? sc->second->overall : std::nullopt));
    out += "| Metric | Severity | Score | Violations |\n|---|---|---|---|\n";
    std::size_t end = i;
    while (end < report.results.size() && report.results[end].team == first.team &&
           report.results[end].sprint == first.sprint)
      ++end;
    for (std::size_t k = i; k < end; ++k) {
      const auto& r = report.results[k];
      out += fmt::format("| {} | {} | {} | {} |\n", r.metric, to_string(r.severity),
                         score_text(r.score ? std::optional<double>(r.score->value()) : std::nullopt),
                         r.violations.size());
    }
    if (auto u = unfinished.find(first.sprint); u != unfinished.end()) {
      const auto& us = *u->second;
      std::string issues;
      for (auto n : us.stories) issues += fmt::format("{}#{}", issues.empty() ? "" : ", ", n);
      out += fmt::format("\nUnfinished stories: {} of {} ({}){}\n", us.amount, us.total,
                         us.percent ? fmt::format("{:.2f}", *us.percent) : std::string("n/a"),
                         issues.empty() ? "" : ": " + issues);
    }
    for (std::size_t k = i; k < end; ++k) {
      const auto& r = report.results[k];
      if (r.violations.empty() && r.diagnostic.empty()) continue;
      const RegisteredMetric* m = registry.find(r.metric);
      out += fmt::format("\n### {}\n\n", m != nullptr ? m->descriptor.title : r.metric);
      for (const auto& v : r.violations) {
        std::string refs;
        for (const auto& a : v.artifacts) refs += (refs.empty() ? "" : ", ") + artifact_text(a);
        out += fmt::format("- {}{}\n", v.detail, refs.empty() ? "" : " (" + refs + ")");
      }
      if (!r.diagnostic.empty()) out += fmt::format("- note: {}\n", r.diagnostic);
      if (m != nullptr && !m->descriptor.pitfalls.empty())
        out += fmt::format("\n> Does not measure: {}\n", m->descriptor.pitfalls);
    }
    i = end;
  }
  if (!report.diagnostics.empty()) {
    out += "\n## Diagnostics\n\n";
    for (const auto& d : report.diagnostics) out += fmt::format("- {}\n", d);
  }
  return out;
}

}  // namespace agilelint
