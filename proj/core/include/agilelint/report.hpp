#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agilelint/config.hpp"
#include "agilelint/engine.hpp"
#include "agilelint/history.hpp"
#include "agilelint/metrics.hpp"
#include "agilelint/scoring.hpp"

namespace agilelint {

struct LintOptions {
  // Sprint title to restrict to; every team's sprint with that title is kept.
  std::optional<std::string> sprint_title;
  // Reference time for the unfinished-stories query. Defaults to just after
  // the latest sprint due date, so reports never depend on the wall clock.
  std::optional<Timestamp> now;
  unsigned threads = 0;
};

struct RunReport {
  std::string tool_version;
  std::string config_digest;
  nlohmann::json config;
  std::vector<MetricResult> results;
  std::vector<TeamSprintScore> scores;
  std::vector<UnfinishedStories> unfinished;
  std::vector<std::string> diagnostics;
};

/// Throws LookupError when sprint_title matches no sprint.
RunReport lint(const ProjectHistory& history, const MetricConfig& config, const LintOptions& options = {});
RunReport lint(const MetricRegistry& registry, const ProjectHistory& history, const MetricConfig& config,
               const LintOptions& options = {});

nlohmann::json to_json(const RunReport& report, const ProjectHistory& history);
std::string render_json(const RunReport& report, const ProjectHistory& history);
std::string render_markdown(const RunReport& report, const ProjectHistory& history,
                            const MetricRegistry& registry = builtin_registry());

}  // namespace agilelint
