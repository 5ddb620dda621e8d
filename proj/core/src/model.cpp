#include "agilelint/model.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace agilelint {

bool UserStory::in_sprint(std::string_view sprint) const {
  return std::any_of(sprint_memberships.begin(), sprint_memberships.end(),
                     [&](const SprintMembership& m) { return m.sprint_id == sprint; });
}

double Sprint::length_days() const {
  return static_cast<double>((due_on - starts_at).count()) / static_cast<double>(kSecondsPerDay);
}

std::string_view to_string(StoryState state) {
  return state == StoryState::open ? "open" : "closed";
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::informational: return "informational";
    case Severity::very_low: return "very_low";
    case Severity::low: return "low";
    case Severity::normal: return "normal";
    case Severity::high: return "high";
  }
  return "unknown";
}

std::string_view to_string(Effort effort) {
  switch (effort) {
    case Effort::low: return "low";
    case Effort::medium: return "medium";
    case Effort::high: return "high";
  }
  return "unknown";
}

std::string_view to_string(DataSource source) {
  switch (source) {
    case DataSource::version_control: return "version_control";
    case DataSource::story_tracker: return "story_tracker";
    case DataSource::pull_requests: return "pull_requests";
    case DataSource::coverage_stats: return "coverage_stats";
  }
  return "unknown";
}

std::string_view to_string(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::commit: return "commit";
    case ArtifactKind::story: return "story";
    case ArtifactKind::pull_request: return "pull_request";
    case ArtifactKind::file: return "file";
    case ArtifactKind::developer: return "developer";
  }
  return "unknown";
}

std::optional<StoryState> parse_story_state(std::string_view text) {
  if (text == "open") return StoryState::open;
  if (text == "closed") return StoryState::closed;
  return std::nullopt;
}

std::optional<Severity> parse_severity(std::string_view text) {
  for (const Severity s : kAllSeverities) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

ArtifactRef commit_ref(std::string id) { return {ArtifactKind::commit, std::move(id)}; }
ArtifactRef story_ref(std::int64_t number) { return {ArtifactKind::story, std::to_string(number)}; }
ArtifactRef pull_ref(std::int64_t number) { return {ArtifactKind::pull_request, std::to_string(number)}; }
ArtifactRef file_ref(std::string path) { return {ArtifactKind::file, std::move(path)}; }
ArtifactRef developer_ref(std::string id) { return {ArtifactKind::developer, std::move(id)}; }

Score::Score(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 100.0)) {
    throw std::out_of_range(fmt::format("score {} outside [0, 100]", value));
  }
}

}  // namespace agilelint
