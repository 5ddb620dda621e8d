#include "agilelint/history.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

namespace agilelint {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = fmt::format("{} validation error(s)", problems.size());
  for (const auto& p : problems) {
    out += "\n  ";
    out += p;
  }
  return out;
}

std::string lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

std::string canonical_developer(const std::string& raw, const std::map<std::string, DeveloperId>& aliases) {
  if (auto it = aliases.find(raw); it != aliases.end()) return lowercase(it->second);
  std::string lowered = lowercase(raw);
  if (auto it = aliases.find(lowered); it != aliases.end()) return lowercase(it->second);
  return lowered;
}

void map_team(TeamId& team, const std::map<std::string, TeamId>& team_map) {
  if (auto it = team_map.find(team); it != team_map.end()) team = it->second;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

const std::set<DeveloperId>& ProjectHistory::developers_of(const TeamId& team) const {
  static const std::set<DeveloperId> kEmpty;
  auto it = developers_.find(team);
  return it == developers_.end() ? kEmpty : it->second;
}

const Commit* ProjectHistory::find_commit(std::string_view id) const {
  auto it = commit_index_.find(std::string(id));
  return it == commit_index_.end() ? nullptr : &commits_[it->second];
}

const Sprint* ProjectHistory::find_sprint(std::string_view id) const {
  auto it = sprint_index_.find(std::string(id));
  return it == sprint_index_.end() ? nullptr : &sprints_[it->second];
}

const BuildStats* ProjectHistory::find_stats(std::string_view commit_id) const {
  auto it = stats_index_.find(std::string(commit_id));
  return it == stats_index_.end() ? nullptr : &stats_[it->second];
}

const UserStory* ProjectHistory::find_story(const TeamId& team, std::int64_t number) const {
  auto it = std::lower_bound(stories_.begin(), stories_.end(), std::tie(team, number),
                             [](const UserStory& s, const auto& key) {
                               return std::tie(s.team, s.number) < key;
                             });
  if (it == stories_.end() || it->team != team || it->number != number) return nullptr;
  return &*it;
}

std::vector<const Sprint*> ProjectHistory::sprints_of(const TeamId& team) const {
  std::vector<const Sprint*> out;
  for (const auto& s : sprints_) {
    if (s.team == team) out.push_back(&s);
  }
  return out;
}

bool ProjectHistory::operator==(const ProjectHistory& other) const {
  return teams_ == other.teams_ && developers_ == other.developers_ && commits_ == other.commits_ &&
         stories_ == other.stories_ && sprints_ == other.sprints_ && pulls_ == other.pulls_ &&
         stats_ == other.stats_ && diagnostics_ == other.diagnostics_;
}

void ProjectHistory::index() {
  commit_index_.clear();
  sprint_index_.clear();
  stats_index_.clear();
  for (std::size_t i = 0; i < commits_.size(); ++i) commit_index_.emplace(commits_[i].id, i);
  for (std::size_t i = 0; i < sprints_.size(); ++i) sprint_index_.emplace(sprints_[i].id, i);
  for (std::size_t i = 0; i < stats_.size(); ++i) stats_index_.emplace(stats_[i].commit_id, i);
}

ProjectHistory build_history(RawRecords records) {
  std::vector<std::string> problems;
  ProjectHistory h;

  for (auto& c : records.commits) {
    map_team(c.team, records.team_map);
    c.author = canonical_developer(c.author, records.alias_map);
  }
  for (auto& s : records.stories) {
    map_team(s.team, records.team_map);
    for (auto& a : s.assignees) a = canonical_developer(a, records.alias_map);
  }
  for (auto& s : records.sprints) map_team(s.team, records.team_map);
  for (auto& p : records.pulls) map_team(p.team, records.team_map);

  // Sprints first: stories reference them.
  std::map<SprintId, const Sprint*> sprint_by_id;
  for (const auto& s : records.sprints) {
    if (s.id.empty()) problems.push_back(fmt::format("sprint '{}': empty id", s.title));
    if (s.team.empty()) problems.push_back(fmt::format("sprint {}: empty team", s.id));
    if (!(s.starts_at < s.due_on))
      problems.push_back(fmt::format("sprint {}: starts_at {} is not before due_on {}", s.id,
                                     format_timestamp(s.starts_at), format_timestamp(s.due_on)));
    if (!sprint_by_id.emplace(s.id, &s).second)
      problems.push_back(fmt::format("sprint {}: duplicate id", s.id));
  }

  std::set<CommitId> commit_ids;
  for (const auto& c : records.commits) {
    if (c.id.empty()) problems.push_back("commit with empty id");
    if (c.author.empty()) problems.push_back(fmt::format("commit {}: empty author", c.id));
    if (c.team.empty()) problems.push_back(fmt::format("commit {}: empty team", c.id));
    for (const auto& f : c.files) {
      if (f.path.empty()) problems.push_back(fmt::format("commit {}: file change with empty path", c.id));
      if (f.lines_added < 0 || f.lines_deleted < 0)
        problems.push_back(fmt::format("commit {}: negative line count for {}", c.id, f.path));
    }
    if (!commit_ids.insert(c.id).second) problems.push_back(fmt::format("commit {}: duplicate id", c.id));
  }
  for (const auto& c : records.commits) {
    for (const auto& p : c.parents) {
      if (!commit_ids.contains(p))
        h.diagnostics_.push_back(fmt::format("commit {}: parent {} not in export (shallow history)", c.id, p));
    }
  }

  std::set<CommitId> stats_ids;
  for (const auto& st : records.stats) {
    if (!commit_ids.contains(st.commit_id))
      problems.push_back(fmt::format("stats for commit {}: unknown commit", st.commit_id));
    if (!(st.coverage_percent >= 0.0 && st.coverage_percent <= 100.0))
      problems.push_back(fmt::format("stats for commit {}: coverage {} outside [0, 100]", st.commit_id,
                                     st.coverage_percent));
    if (!(st.complexity >= 0.0) || !std::isfinite(st.complexity))
      problems.push_back(fmt::format("stats for commit {}: invalid complexity {}", st.commit_id, st.complexity));
    if (!stats_ids.insert(st.commit_id).second)
      problems.push_back(fmt::format("stats for commit {}: duplicate row", st.commit_id));
  }

  std::set<std::pair<TeamId, std::int64_t>> story_keys;
  for (const auto& s : records.stories) {
    const auto label = fmt::format("story {}#{}", s.team, s.number);
    if (s.number <= 0) problems.push_back(fmt::format("{}: number must be positive", label));
    if (s.team.empty()) problems.push_back(fmt::format("{}: empty team", label));
    if (!story_keys.emplace(s.team, s.number).second) problems.push_back(fmt::format("{}: duplicate number", label));
    if ((s.state == StoryState::closed) != s.closed_at.has_value())
      problems.push_back(fmt::format("{}: closed_at must be present exactly when state is closed", label));
    std::set<SprintId> seen;
    for (const auto& m : s.sprint_memberships) {
      if (!seen.insert(m.sprint_id).second)
        problems.push_back(fmt::format("{}: sprint {} listed twice in milestone history", label, m.sprint_id));
      auto it = sprint_by_id.find(m.sprint_id);
      if (it == sprint_by_id.end()) {
        problems.push_back(fmt::format("{}: unknown sprint {}", label, m.sprint_id));
      } else if (it->second->team != s.team) {
        problems.push_back(
            fmt::format("{}: sprint {} belongs to team {}", label, m.sprint_id, it->second->team));
      }
    }
  }

  std::set<std::pair<TeamId, std::int64_t>> pull_keys;
  for (const auto& p : records.pulls) {
    const auto label = fmt::format("pull request {}#{}", p.team, p.number);
    if (p.number <= 0) problems.push_back(fmt::format("{}: number must be positive", label));
    if (p.team.empty()) problems.push_back(fmt::format("{}: empty team", label));
    if (!pull_keys.emplace(p.team, p.number).second) problems.push_back(fmt::format("{}: duplicate number", label));
    if (p.closed_at && *p.closed_at < p.opened_at) problems.push_back(fmt::format("{}: closed before opened", label));
    if (p.merged && !p.closed_at) problems.push_back(fmt::format("{}: merged but not closed", label));
    if (p.comment_count < 0) problems.push_back(fmt::format("{}: negative comment count", label));
  }

  if (!problems.empty()) throw ValidationError(std::move(problems));

  for (const auto& c : records.commits) h.teams_.insert(c.team);
  for (const auto& s : records.stories) h.teams_.insert(s.team);
  for (const auto& s : records.sprints) h.teams_.insert(s.team);
  for (const auto& p : records.pulls) h.teams_.insert(p.team);
  for (const auto& [team, devs] : records.roster) h.teams_.insert(team);

  for (const auto& team : h.teams_) h.developers_[team];
  for (const auto& c : records.commits) h.developers_[c.team].insert(c.author);
  for (const auto& s : records.stories) h.developers_[s.team].insert(s.assignees.begin(), s.assignees.end());
  for (const auto& [team, devs] : records.roster) {
    auto& set = h.developers_[team];
    set.clear();
    for (const auto& d : devs) set.insert(canonical_developer(d, records.alias_map));
  }

  h.commits_ = std::move(records.commits);
  h.stories_ = std::move(records.stories);
  h.sprints_ = std::move(records.sprints);
  h.pulls_ = std::move(records.pulls);
  h.stats_ = std::move(records.stats);

  std::sort(h.commits_.begin(), h.commits_.end(), [](const Commit& a, const Commit& b) {
    return std::tie(a.authored_at, a.id) < std::tie(b.authored_at, b.id);
  });
  std::sort(h.stories_.begin(), h.stories_.end(), [](const UserStory& a, const UserStory& b) {
    return std::tie(a.team, a.number) < std::tie(b.team, b.number);
  });
  std::sort(h.sprints_.begin(), h.sprints_.end(), [](const Sprint& a, const Sprint& b) {
    return std::tie(a.team, a.due_on, a.id) < std::tie(b.team, b.due_on, b.id);
  });
  std::sort(h.pulls_.begin(), h.pulls_.end(), [](const PullRequest& a, const PullRequest& b) {
    return std::tie(a.team, a.number) < std::tie(b.team, b.number);
  });
  std::sort(h.stats_.begin(), h.stats_.end(),
            [](const BuildStats& a, const BuildStats& b) { return a.commit_id < b.commit_id; });
  std::sort(h.diagnostics_.begin(), h.diagnostics_.end());

  h.index();
  return h;
}

SprintSlice window(const ProjectHistory& history, const TeamId& team, const SprintId& sprint_id) {
  const Sprint* sprint = history.find_sprint(sprint_id);
  if (sprint == nullptr) throw LookupError(fmt::format("unknown sprint {}", sprint_id));
  if (sprint->team != team)
    throw LookupError(fmt::format("sprint {} belongs to team {}, not {}", sprint_id, sprint->team, team));

  SprintSlice slice;
  slice.history = &history;
  slice.sprint = sprint;
  slice.team = team;

  const auto commits = history.commits();
  auto first = std::lower_bound(commits.begin(), commits.end(), sprint->starts_at,
                                [](const Commit& c, Timestamp t) { return c.authored_at < t; });
  for (auto it = first; it != commits.end() && it->authored_at <= sprint->due_on; ++it) {
    if (it->team == team) slice.commits.push_back(&*it);
  }
  for (const auto& s : history.stories()) {
    if (s.team == team && s.in_sprint(sprint_id)) slice.stories.push_back(&s);
  }
  for (const auto& p : history.pulls()) {
    if (p.team == team && sprint->contains(p.opened_at)) slice.pulls.push_back(&p);
  }
  return slice;
}

}  // namespace agilelint
