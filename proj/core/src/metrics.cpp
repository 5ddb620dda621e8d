#include "agilelint/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <fmt/format.h>

#include "agilelint/rating.hpp"
#include "agilelint/text.hpp"

namespace agilelint {

namespace n = metric_names;

namespace {

MetricResult start_result(std::string_view metric, const SprintSlice& slice, const MetricConfig& config) {
  MetricResult r;
  r.metric = std::string(metric);
  r.team = slice.team;
  r.sprint = slice.sprint->id;
  r.severity = effective_severity(builtin_descriptor(metric), config);
  return r;
}

Violation make_violation(const MetricResult& r, std::vector<ArtifactRef> artifacts, std::string detail,
                         std::map<std::string, double> numbers = {}) {
  return Violation{r.metric, r.team, r.sprint, std::move(artifacts), std::move(detail), std::move(numbers)};
}

MetricResult& finish(MetricResult& r, RatingKind kind) {
  if (auto score = RatingFunction{kind}(r.inputs_echo)) r.score = Score(*score);
  std::sort(r.violations.begin(), r.violations.end(),
            [](const Violation& a, const Violation& b) { return a.artifacts < b.artifacts; });
  return r;
}

MetricResult& not_applicable(MetricResult& r, std::string reason) {
  r.score.reset();
  r.diagnostic = std::move(reason);
  return r;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

}  // namespace

std::vector<FileEditProfile> file_edit_profiles(std::span<const Commit* const> commits) {
  std::map<std::string, FileEditProfile> by_path;
  for (const Commit* c : commits) {
    std::set<std::string_view> touched;
    for (const auto& f : c->files) {
      if (!touched.insert(f.path).second) continue;
      auto& profile = by_path[f.path];
      profile.path = f.path;
      ++profile.edits;
      profile.authors.insert(c->author);
    }
  }
  std::vector<FileEditProfile> out;
  out.reserve(by_path.size());
  for (auto& [path, profile] : by_path) out.push_back(std::move(profile));
  return out;
}

MetricResult detect_collective_ownership(const SprintSlice& slice, const MetricConfig& config) {
  const auto& cfg = config.collective_ownership;
  MetricResult r = start_result(n::kCollectiveOwnership, slice, config);
  const auto profiles = file_edit_profiles(slice.commits);
  for (const auto& p : profiles) {
    const auto edits = static_cast<double>(p.edits);
    const auto authors = static_cast<double>(p.authors.size());
    if (edits >= cfg.threshold_edits && authors <= cfg.threshold_authors) {
      r.violations.push_back(make_violation(
          r, {file_ref(p.path)}, fmt::format("{} edited {} times by {} author(s)", p.path, p.edits, p.authors.size()),
          {{"edits", edits}, {"authors", authors}}));
    }
  }
  r.inputs_echo = {{"violations", static_cast<double>(r.violations.size())},
                   {"weight", cfg.weight},
                   {"threshold_e", cfg.threshold_edits},
                   {"threshold_a", cfg.threshold_authors},
                   {"files", static_cast<double>(profiles.size())}};
  return finish(r, RatingKind::threshold_linear);
}

MetricResult detect_test_later(const SprintSlice& slice, const MetricConfig& config) {
  const auto& cfg = config.test_later;
  const ProjectHistory& history = *slice.history;
  MetricResult r = start_result(n::kTestLater, slice, config);
  std::size_t with_stats = 0;
  std::size_t skipped_merges = 0;
  std::size_t missing_parent_stats = 0;
  for (const Commit* c : slice.commits) {
    const BuildStats* own = history.find_stats(c->id);
    if (own == nullptr) continue;
    ++with_stats;
    if (c->parents.size() > 1) {
      ++skipped_merges;
      continue;
    }
    if (c->parents.empty()) continue;
    const BuildStats* parent = history.find_stats(c->parents.front());
    if (parent == nullptr) {
      ++missing_parent_stats;
      continue;
    }
    if (own->complexity > parent->complexity && own->coverage_percent < parent->coverage_percent) {
      r.violations.push_back(make_violation(
          r, {commit_ref(c->id)},
          fmt::format("complexity {} -> {}, coverage {}% -> {}% relative to {}", parent->complexity, own->complexity,
                      parent->coverage_percent, own->coverage_percent, c->parents.front()),
          {{"complexity_delta", own->complexity - parent->complexity},
           {"coverage_delta", own->coverage_percent - parent->coverage_percent}}));
    }
  }
  r.inputs_echo = {{"violations", static_cast<double>(r.violations.size())},
                   {"total", static_cast<double>(with_stats)},
                   {"weight", cfg.weight},
                   {"extra_factor", 1.0},
                   {"commits", static_cast<double>(slice.commits.size())},
                   {"skipped_merges", static_cast<double>(skipped_merges)},
                   {"missing_parent_stats", static_cast<double>(missing_parent_stats)}};
  if (with_stats == 0) return not_applicable(r, "no commit in the sprint has coverage stats");
  return finish(r, RatingKind::ratio_linear);
}

MetricResult detect_huge_stories(const SprintSlice& slice, const MetricConfig& config) {
  const auto& cfg = config.huge_stories;
  MetricResult r = start_result(n::kHugeStories, slice, config);
  const std::size_t count = slice.stories.size();
  std::vector<double> lengths;
  std::vector<double> checkboxes;
  for (const UserStory* s : slice.stories) {
    lengths.push_back(static_cast<double>(story_length(*s)));
    checkboxes.push_back(static_cast<double>(count_checkboxes(s->body)));
  }
  double avg_length = 0.0;
  double avg_checkboxes = 0.0;
  if (count > 0) {
    for (std::size_t i = 0; i < count; ++i) {
      avg_length += lengths[i];
      avg_checkboxes += checkboxes[i];
    }
    avg_length /= static_cast<double>(count);
    avg_checkboxes /= static_cast<double>(count);
  }
  for (std::size_t i = 0; i < count; ++i) {
    const bool too_long = lengths[i] > cfg.threshold_length * avg_length;
    const bool too_many_tasks = avg_checkboxes > 0.0 && checkboxes[i] > cfg.threshold_checkboxes * avg_checkboxes;
    if (!too_long && !too_many_tasks) continue;
    const UserStory& s = *slice.stories[i];
    std::string why = too_long ? fmt::format("{} characters vs. average {:.1f}", lengths[i], avg_length)
                               : fmt::format("{} checkboxes vs. average {:.2f}", checkboxes[i], avg_checkboxes);
    r.violations.push_back(make_violation(r, {story_ref(s.number)}, fmt::format("#{} {}: {}", s.number, s.title, why),
                                          {{"length", lengths[i]}, {"checkboxes", checkboxes[i]}}));
  }
  r.inputs_echo = {{"violations", static_cast<double>(r.violations.size())},
                   {"weight", cfg.weight},
                   {"stories", static_cast<double>(count)},
                   {"avg_length", avg_length},
                   {"avg_checkboxes", avg_checkboxes},
                   {"threshold_length", cfg.threshold_length},
                   {"threshold_check", cfg.threshold_checkboxes}};
  if (count == 0) return not_applicable(r, "sprint backlog is empty");
  return finish(r, RatingKind::threshold_linear);
}

MetricResult detect_multi_backlog(const SprintSlice& slice, const MetricConfig& config) {
  const auto& cfg = config.multiple_backlogs;
  const ProjectHistory& history = *slice.history;
  MetricResult r = start_result(n::kMultipleBacklogs, slice, config);
  double membership_sum = 0.0;
  for (const UserStory* s : slice.stories) {
    std::size_t memberships = 0;
    for (const auto& m : s->sprint_memberships) {
      const Sprint* sprint = history.find_sprint(m.sprint_id);
      if (sprint != nullptr && sprint->due_on <= slice.sprint->due_on) ++memberships;
    }
    if (static_cast<double>(memberships) > cfg.threshold_amount) {
      membership_sum += static_cast<double>(memberships);
      r.violations.push_back(make_violation(r, {story_ref(s->number)},
                                            fmt::format("#{} {}: in {} sprint backlogs", s->number, s->title, memberships),
                                            {{"sprints", static_cast<double>(memberships)}}));
    }
  }
  const double avg_in_sprints =
      r.violations.empty() ? 1.0 : membership_sum / static_cast<double>(r.violations.size());
  r.inputs_echo = {{"violations", static_cast<double>(r.violations.size())},
                   {"total", static_cast<double>(slice.stories.size())},
                   {"weight", cfg.weight},
                   {"extra_factor", avg_in_sprints},
                   {"avg_in_sprints", avg_in_sprints},
                   {"threshold_amount", cfg.threshold_amount}};
  if (slice.stories.empty()) return not_applicable(r, "sprint backlog is empty");
  return finish(r, RatingKind::ratio_linear);
}

MetricResult detect_duplicates(const SprintSlice& slice, const MetricConfig& config) {
  const auto& cfg = config.duplicates;
  MetricResult r = start_result(n::kDuplicates, slice, config);
  for (const UserStory* s : slice.stories) {
    const bool labelled = std::any_of(s->labels.begin(), s->labels.end(),
                                      [&](const std::string& l) { return iequals(l, cfg.duplicate_label); });
    if (labelled)
      r.violations.push_back(make_violation(r, {story_ref(s->number)},
                                            fmt::format("#{} {}: labelled '{}'", s->number, s->title, cfg.duplicate_label)));
  }
  r.inputs_echo = {{"violations", static_cast<double>(r.violations.size())},
                   {"total", static_cast<double>(slice.stories.size())},
                   {"weight", cfg.weight},
                   {"extra_factor", 1.0}};
  if (slice.stories.empty()) return not_applicable(r, "sprint backlog is empty");
  return finish(r, RatingKind::ratio_linear);
}

MetricResult detect_last_minute(const SprintSlice& slice, const MetricConfig& config) {
  const auto& cfg = config.last_minute;
  MetricResult r = start_result(n::kLastMinute, slice, config);
  const double due = static_cast<double>(to_unix(slice.sprint->due_on));
  const double window_start = due - cfg.window_minutes * 60.0;
  for (const Commit* c : slice.commits) {
    const double t = static_cast<double>(to_unix(c->authored_at));
    if (t >= window_start && t <= due) {
      r.violations.push_back(make_violation(r, {commit_ref(c->id)},
                                            fmt::format("{} by {} at {}, {:.0f} min before due", c->id, c->author,
                                                        format_timestamp(c->authored_at), (due - t) / 60.0),
                                            {{"minutes_before_due", (due - t) / 60.0}}));
    }
  }
  r.inputs_echo = {{"violations", static_cast<double>(r.violations.size())},
                   {"total", static_cast<double>(slice.commits.size())},
                   {"weight", cfg.weight},
                   {"extra_factor", 1.0},
                   {"window_minutes", cfg.window_minutes}};
  if (slice.commits.empty()) return not_applicable(r, "no commits in the sprint");
  return finish(r, RatingKind::ratio_linear);
}

MetricResult detect_no_committing(const SprintSlice& slice, std::size_t developer_count, const MetricConfig& config) {
  const auto& cfg = config.no_committing;
  MetricResult r = start_result(n::kNoCommitting, slice, config);
  const double commits = static_cast<double>(slice.commits.size());
  const double per_dev = developer_count == 0 ? 0.0 : commits / static_cast<double>(developer_count);
  r.inputs_echo = {{"x", per_dev},
                   {"weight", cfg.weight},
                   {"commits", commits},
                   {"developers", static_cast<double>(developer_count)}};
  if (developer_count == 0) return not_applicable(r, "team has no developers");

  std::set<DeveloperId> active;
  for (const Commit* c : slice.commits) active.insert(c->author);
  std::vector<ArtifactRef> idle;
  for (const auto& dev : slice.history->developers_of(slice.team)) {
    if (!active.contains(dev)) idle.push_back(developer_ref(dev));
  }
  if (!idle.empty()) {
    const auto count = idle.size();
    r.violations.push_back(make_violation(r, std::move(idle),
                                          fmt::format("{} developer(s) without commits this sprint", count),
                                          {{"idle_developers", static_cast<double>(count)}}));
  }
  return finish(r, RatingKind::capped_linear);
}

MetricResult detect_no_committing(const SprintSlice& slice, const MetricConfig& config) {
  return detect_no_committing(slice, slice.history->developers_of(slice.team).size(), config);
}

MetricResult detect_daily_story_quota(const SprintSlice& slice, std::size_t developer_count,
                                      const MetricConfig& config) {
  const auto& cfg = config.daily_story_quota;
  MetricResult r = start_result(n::kDailyStoryQuota, slice, config);
  const double backlog = static_cast<double>(slice.stories.size());
  const double length = slice.sprint->length_days();
  const double devs = static_cast<double>(developer_count);
  const double quota = backlog == 0.0 ? 0.0 : devs / backlog / length;
  r.inputs_echo = {{"quota", quota},
                   {"weight_a", cfg.weight_a},
                   {"weight_b", cfg.weight_b},
                   {"developers", devs},
                   {"backlog", backlog},
                   {"sprint_length_days", length}};
  if (slice.stories.empty()) return not_applicable(r, "sprint backlog is empty");
  return finish(r, RatingKind::cutoff_parabola);
}

MetricResult detect_daily_story_quota(const SprintSlice& slice, const MetricConfig& config) {
  return detect_daily_story_quota(slice, slice.history->developers_of(slice.team).size(), config);
}

MetricResult detect_fast_pulls(const SprintSlice& slice, const MetricConfig& config) {
  const auto& cfg = config.fast_pulls;
  MetricResult r = start_result(n::kFastPulls, slice, config);
  std::size_t closed = 0;
  for (const PullRequest* p : slice.pulls) {
    if (!p->closed_at) continue;
    ++closed;
    const double minutes = static_cast<double>((*p->closed_at - p->opened_at).count()) / 60.0;
    if (minutes < cfg.window_minutes && p->comment_count == 0) {
      r.violations.push_back(make_violation(r, {pull_ref(p->number)},
                                            fmt::format("#{} closed after {:.1f} min without comments", p->number, minutes),
                                            {{"minutes_open", minutes}}));
    }
  }
  r.inputs_echo = {{"violations", static_cast<double>(r.violations.size())},
                   {"total", static_cast<double>(closed)},
                   {"weight", 1.0},
                   {"extra_factor", 1.0},
                   {"window_minutes", cfg.window_minutes}};
  if (closed == 0) return not_applicable(r, "no closed pull requests in the sprint");
  return finish(r, RatingKind::ratio_linear);
}

std::optional<UnfinishedStories> unfinished_stories(const ProjectHistory& history, const SprintId& sprint_id,
                                                    Timestamp now) {
  const Sprint* sprint = history.find_sprint(sprint_id);
  if (sprint == nullptr) throw LookupError(fmt::format("unknown sprint {}", sprint_id));
  if (!(sprint->due_on < now)) return std::nullopt;
  UnfinishedStories out;
  out.sprint = sprint->id;
  out.sprint_title = sprint->title;
  out.team = sprint->team;
  for (const auto& s : history.stories()) {
    if (s.team != sprint->team || !s.in_sprint(sprint->id)) continue;
    ++out.total;
    if (s.state == StoryState::open) out.stories.push_back(s.number);
  }
  out.amount = out.stories.size();
  if (out.total > 0) out.percent = static_cast<double>(out.amount) / static_cast<double>(out.total);
  return out;
}

}  // namespace agilelint
