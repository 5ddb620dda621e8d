#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agilelint/time.hpp"

namespace agilelint {

using TeamId = std::string;
using DeveloperId = std::string;
using SprintId = std::string;
using CommitId = std::string;

struct FileChange {
  std::string path;
  std::int64_t lines_added = 0;
  std::int64_t lines_deleted = 0;

  bool operator==(const FileChange&) const = default;
};

struct Commit {
  CommitId id;
  DeveloperId author;
  Timestamp authored_at{};
  std::vector<CommitId> parents;
  std::string message;
  std::vector<FileChange> files;
  TeamId team;

  bool operator==(const Commit&) const = default;
};

/// Coverage and complexity measured by external tooling for one commit.
struct BuildStats {
  CommitId commit_id;
  double coverage_percent = 0.0;
  double complexity = 0.0;

  bool operator==(const BuildStats&) const = default;
};

enum class StoryState { open, closed };

struct SprintMembership {
  SprintId sprint_id;
  std::optional<Timestamp> assigned_at;

  bool operator==(const SprintMembership&) const = default;
};

struct UserStory {
  std::int64_t number = 0;
  std::string title;
  std::string body;
  StoryState state = StoryState::open;
  std::vector<std::string> labels;
  // Full assignment history in tracker order.
  std::vector<SprintMembership> sprint_memberships;
  std::vector<DeveloperId> assignees;
  Timestamp created_at{};
  std::optional<Timestamp> closed_at;
  TeamId team;

  bool in_sprint(std::string_view sprint) const;
  bool operator==(const UserStory&) const = default;
};

struct Sprint {
  SprintId id;
  std::string title;
  Timestamp starts_at{};
  Timestamp due_on{};
  TeamId team;

  double length_days() const;
  bool contains(Timestamp ts) const { return starts_at <= ts && ts <= due_on; }
  bool operator==(const Sprint&) const = default;
};

struct PullRequest {
  std::int64_t number = 0;
  Timestamp opened_at{};
  std::optional<Timestamp> closed_at;
  bool merged = false;
  std::int64_t comment_count = 0;
  TeamId team;

  bool operator==(const PullRequest&) const = default;
};

enum class Severity { informational, very_low, low, normal, high };
enum class Effort { low, medium, high };
enum class DataSource { version_control, story_tracker, pull_requests, coverage_stats };

inline constexpr Severity kAllSeverities[] = {Severity::informational, Severity::very_low,
                                              Severity::low, Severity::normal, Severity::high};

std::string_view to_string(StoryState state);
std::string_view to_string(Severity severity);
std::string_view to_string(Effort effort);
std::string_view to_string(DataSource source);
std::optional<StoryState> parse_story_state(std::string_view text);
std::optional<Severity> parse_severity(std::string_view text);

/// The conformance template for one metric.
struct MetricDescriptor {
  std::string name;
  std::string title;
  std::string synopsis;
  std::string description;
  std::vector<DataSource> data_sources;
  std::vector<std::string> categories;
  Effort effort = Effort::low;
  Severity severity = Severity::normal;
  std::string pitfalls;
};

enum class ArtifactKind { commit, story, pull_request, file, developer };

std::string_view to_string(ArtifactKind kind);

struct ArtifactRef {
  ArtifactKind kind = ArtifactKind::commit;
  std::string id;

  auto operator<=>(const ArtifactRef&) const = default;
};

ArtifactRef commit_ref(std::string id);
ArtifactRef story_ref(std::int64_t number);
ArtifactRef pull_ref(std::int64_t number);
ArtifactRef file_ref(std::string path);
ArtifactRef developer_ref(std::string id);

struct Violation {
  std::string metric;
  TeamId team;
  SprintId sprint;
  std::vector<ArtifactRef> artifacts;
  std::string detail;
  std::map<std::string, double> numeric_detail;
};

/// A rating in [0, 100]. Construction rejects anything else, NaN included.
class Score {
 public:
  explicit Score(double value);

  double value() const { return value_; }
  auto operator<=>(const Score&) const = default;

 private:
  double value_;
};

struct MetricResult {
  std::string metric;
  TeamId team;
  SprintId sprint;
  Severity severity = Severity::normal;
  std::vector<Violation> violations;
  // Absent when the metric is not applicable to this sprint.
  std::optional<Score> score;
  std::map<std::string, double> inputs_echo;
  std::string diagnostic;

  bool applicable() const { return score.has_value(); }
};

}  // namespace agilelint
