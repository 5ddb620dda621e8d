#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "agilelint/metrics.hpp"

namespace agilelint {

namespace {

std::vector<MetricDescriptor> make_descriptors() {
  namespace n = metric_names;
  using DS = DataSource;
  return {
      {std::string(n::kCollectiveOwnership), "Collective Code Ownership",
       "Files whose edits concentrate on very few authors.",
       "Any developer should be able to change any part of the code base. A file that receives many edits "
       "within one sprint from only one or two people signals knowledge silos and a low bus number. "
       "Each such file is a violation.",
       {DS::version_control}, {"XP Practices"}, Effort::low, Severity::normal,
       "Pair programming is invisible in commit authorship, so paired edits look like single-author work. "
       "Generated or vendored files can also dominate edit counts."},
      {std::string(n::kTestLater), "Test-Later Development",
       "Commits that add complexity while coverage drops.",
       "With test-first development every new branch of logic arrives together with the test that drives it. "
       "A commit that makes the code more complex than its parent while lowering coverage suggests the tests "
       "were postponed. Each such commit is a violation.",
       {DS::version_control, DS::coverage_stats}, {"XP Practices"}, Effort::medium, Severity::normal,
       "Only commits with coverage and complexity figures on both sides are compared; merge commits are skipped. "
       "Deleting tests for dead code also lowers coverage without any process problem."},
      {std::string(n::kHugeStories), "Huge User Stories",
       "Stories far larger than the rest of the sprint backlog.",
       "A story should be small enough to estimate and finish within a sprint. Stories whose text is several "
       "times the backlog average, or that carry several times the average number of task checkboxes, probably "
       "need splitting.",
       {DS::story_tracker}, {"XP Practices"}, Effort::low, Severity::low,
       "Text length is a proxy for scope; a terse story can still hide a lot of work, and pasted logs or code "
       "blocks inflate length."},
      {std::string(n::kMultipleBacklogs), "One Story, Multiple Backlogs",
       "Stories carried over through several sprint backlogs.",
       "A sprint backlog should hold what the team can finish in that sprint. Stories that keep moving into the "
       "next sprint were not done, block dependent work and distort planning. Each story in more sprints than "
       "the threshold is a violation, weighted by how many sprints the offenders were in.",
       {DS::story_tracker}, {"Backlog Maintenance"}, Effort::low, Severity::high,
       "Re-planned stories that were deliberately deferred by the product owner count the same as stories "
       "that were simply not finished."},
      {std::string(n::kDuplicates), "Duplicates",
       "Stories labelled as suspected duplicates.",
       "Overlapping stories risk the same feature being built twice, possibly by different teams. Each backlog "
       "story carrying the duplicate label is a violation.",
       {DS::story_tracker}, {"Backlog Maintenance"}, Effort::low, Severity::very_low,
       "Only stories someone took the time to label are found; unlabelled duplicates stay invisible."},
      {std::string(n::kLastMinute), "At the Last Minute",
       "Commits made shortly before the sprint deadline.",
       "Work should proceed at a steady pace. A burst of commits right before the deadline leaves no room for "
       "review or integration and hints at overtime. Each commit inside the closing window is a violation.",
       {DS::version_control}, {"Developer Productivity"}, Effort::low, Severity::normal,
       "Commit timestamps are set by the author's machine. Rebased or amended commits may carry misleading "
       "dates."},
      {std::string(n::kNoCommitting), "No Committing",
       "Average number of commits per developer in a sprint.",
       "Small, frequent commits make integration, review and merging easier. The score grows with the average "
       "number of commits per team member; members without any commit in the sprint are listed for follow-up.",
       {DS::version_control}, {"Developer Productivity"}, Effort::low, Severity::normal,
       "Commit counts say nothing about commit size or quality, and squash merges hide individual commits."},
      {std::string(n::kDailyStoryQuota), "Daily User Story Amount",
       "Relation of team size, backlog size and sprint length.",
       "Rates the quota developers / backlog size / sprint length in days with a cut-off parabola, so quotas "
       "away from the optimum lose score quickly. The quota is echoed in every result for inspection.",
       {DS::story_tracker}, {"Developer Productivity"}, Effort::low, Severity::low,
       "Stories differ in size, so the count of stories is a coarse stand-in for workload."},
      {std::string(n::kFastPulls), "Fast Pull Requests",
       "Pull requests closed quickly without any comment.",
       "Pull requests give teammates a chance to review and discuss changes before they are merged. A pull "
       "request closed within minutes and without a single comment skipped that step. The score falls with the "
       "share of such pull requests among the closed ones.",
       {DS::pull_requests}, {"Developer Productivity"}, Effort::low, Severity::high,
       "Reviews held in person or in chat leave no comments on the pull request."},
  };
}

}  // namespace

std::span<const MetricDescriptor> builtin_descriptors() {
  static const std::vector<MetricDescriptor> kDescriptors = make_descriptors();
  return kDescriptors;
}

const MetricDescriptor& builtin_descriptor(std::string_view name) {
  const auto all = builtin_descriptors();
  auto it = std::find_if(all.begin(), all.end(), [&](const MetricDescriptor& d) { return d.name == name; });
  if (it == all.end()) throw ConfigError(fmt::format("unknown metric '{}'", name));
  return *it;
}

Severity effective_severity(const MetricDescriptor& descriptor, const MetricConfig& config) {
  const MetricToggle* toggle = config.find_toggle(descriptor.name);
  return toggle != nullptr && toggle->severity_override ? *toggle->severity_override : descriptor.severity;
}

}  // namespace agilelint
