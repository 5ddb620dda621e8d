#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "agilelint/config.hpp"
#include "agilelint/history.hpp"
#include "agilelint/model.hpp"

namespace agilelint {

/// The built-in conformance templates, in registration order.
std::span<const MetricDescriptor> builtin_descriptors();
const MetricDescriptor& builtin_descriptor(std::string_view name);

/// Descriptor severity unless the config overrides it.
Severity effective_severity(const MetricDescriptor& descriptor, const MetricConfig& config);

struct FileEditProfile {
  std::string path;
  std::size_t edits = 0;  // commits in scope touching the path
  std::set<DeveloperId> authors;
};

/// One profile per touched path, sorted by path.
std::vector<FileEditProfile> file_edit_profiles(std::span<const Commit* const> commits);

// Detectors. Each returns violations, the operands its rating function read
// (in inputs_echo) and the score, or no score plus a diagnostic when the
// metric is not applicable to the slice.

/// Files with at least threshold_e edits by at most threshold_a authors.
MetricResult detect_collective_ownership(const SprintSlice& slice, const MetricConfig& config);

/// Single-parent commits that raise complexity and lower coverage relative to
/// their parent. Merge commits and commits without stats on either side are
/// skipped; the denominator is the number of commits with stats.
MetricResult detect_test_later(const SprintSlice& slice, const MetricConfig& config);

/// Stories longer than threshold_length times the backlog average, or with
/// more than threshold_check times the average checkbox count. Averages
/// include every story of the backlog.
MetricResult detect_huge_stories(const SprintSlice& slice, const MetricConfig& config);

/// Backlog stories that have been in more than threshold_amount sprints,
/// counting only sprints due no later than this one.
MetricResult detect_multi_backlog(const SprintSlice& slice, const MetricConfig& config);

/// Backlog stories carrying the duplicate label (case-insensitive).
MetricResult detect_duplicates(const SprintSlice& slice, const MetricConfig& config);

/// Commits within window_minutes before the sprint's due date.
MetricResult detect_last_minute(const SprintSlice& slice, const MetricConfig& config);

/// Scores commits per developer; developers without commits are reported as
/// one informational violation.
MetricResult detect_no_committing(const SprintSlice& slice, std::size_t developer_count, const MetricConfig& config);
MetricResult detect_no_committing(const SprintSlice& slice, const MetricConfig& config);

/// quota = developers / backlog size / sprint length in days, rated by the
/// cut-off parabola. Produces no violations.
MetricResult detect_daily_story_quota(const SprintSlice& slice, std::size_t developer_count,
                                      const MetricConfig& config);
MetricResult detect_daily_story_quota(const SprintSlice& slice, const MetricConfig& config);

/// Closed pull requests open for less than window_minutes with no comments.
MetricResult detect_fast_pulls(const SprintSlice& slice, const MetricConfig& config);

/// Open stories in the backlog of a sprint that is already past due.
struct UnfinishedStories {
  SprintId sprint;
  std::string sprint_title;
  TeamId team;
  std::size_t amount = 0;
  std::vector<std::int64_t> stories;
  std::size_t total = 0;
  std::optional<double> percent;  // amount / total; absent when total is 0
};

/// Empty when the sprint is not yet due at `now`. Throws LookupError for an
/// unknown sprint.
std::optional<UnfinishedStories> unfinished_stories(const ProjectHistory& history, const SprintId& sprint,
                                                    Timestamp now);

}  // namespace agilelint
