#pragma once

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "agilelint/model.hpp"

namespace agilelint {

/// Thrown when records cannot form a consistent history. Carries one message
/// per offending record.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything build_history consumes. The maps are optional overrides.
struct RawRecords {
  std::vector<Commit> commits;
  std::vector<UserStory> stories;
  std::vector<Sprint> sprints;
  std::vector<PullRequest> pulls;
  std::vector<BuildStats> stats;
  // repository name -> team id, applied to every record's team field.
  std::map<std::string, TeamId> team_map;
  // raw author string -> canonical developer id.
  std::map<std::string, DeveloperId> alias_map;
  // Explicit developer roster; replaces the derived set for listed teams.
  std::map<TeamId, std::vector<DeveloperId>> roster;
};

/// Immutable snapshot of a project's development data. Collections are kept in
/// canonical order so equal inputs compare equal regardless of record order:
/// commits by (authored_at, id), stories and pulls by (team, number), sprints
/// by (team, due_on, id), stats by commit id.
class ProjectHistory {
 public:
  ProjectHistory() = default;

  const std::set<TeamId>& teams() const { return teams_; }
  const std::map<TeamId, std::set<DeveloperId>>& developers() const { return developers_; }
  const std::set<DeveloperId>& developers_of(const TeamId& team) const;

  std::span<const Commit> commits() const { return commits_; }
  std::span<const UserStory> stories() const { return stories_; }
  std::span<const Sprint> sprints() const { return sprints_; }
  std::span<const PullRequest> pulls() const { return pulls_; }
  std::span<const BuildStats> build_stats() const { return stats_; }

  const Commit* find_commit(std::string_view id) const;
  const Sprint* find_sprint(std::string_view id) const;
  const BuildStats* find_stats(std::string_view commit_id) const;
  const UserStory* find_story(const TeamId& team, std::int64_t number) const;

  /// Sprints of one team ordered by due date.
  std::vector<const Sprint*> sprints_of(const TeamId& team) const;

  /// Non-fatal findings from construction, e.g. parents missing from a
  /// shallow export.
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  bool operator==(const ProjectHistory& other) const;

 private:
  friend ProjectHistory build_history(RawRecords records);

  void index();

  std::set<TeamId> teams_;
  std::map<TeamId, std::set<DeveloperId>> developers_;
  std::vector<Commit> commits_;
  std::vector<UserStory> stories_;
  std::vector<Sprint> sprints_;
  std::vector<PullRequest> pulls_;
  std::vector<BuildStats> stats_;
  std::vector<std::string> diagnostics_;

  std::unordered_map<std::string, std::size_t> commit_index_;
  std::unordered_map<std::string, std::size_t> sprint_index_;
  std::unordered_map<std::string, std::size_t> stats_index_;
};

/// Validates, canonicalizes and freezes raw records. Author and assignee ids
/// are lowercased after alias resolution. Throws ValidationError listing every
/// dangling reference, duplicate key and malformed record.
ProjectHistory build_history(RawRecords records);

/// Artifacts of one team attributable to one sprint.
struct SprintSlice {
  const ProjectHistory* history = nullptr;
  const Sprint* sprint = nullptr;
  TeamId team;
  std::vector<const Commit*> commits;       // authored_at in [starts_at, due_on]
  std::vector<const UserStory*> stories;    // backlog: memberships include the sprint
  std::vector<const PullRequest*> pulls;    // opened_at in [starts_at, due_on]
};

/// Throws LookupError when the sprint is unknown or belongs to another team.
SprintSlice window(const ProjectHistory& history, const TeamId& team, const SprintId& sprint);

}  // namespace agilelint
