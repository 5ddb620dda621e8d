#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "agilelint/config.hpp"
#include "agilelint/history.hpp"

namespace agilelint {

/// Raised when a fixture or injection request cannot honour its guarantees.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixtureSpec {
  std::uint64_t seed = 1;
  std::size_t teams = 2;
  std::size_t developers_per_team = 8;
  std::size_t sprints = 4;
  double sprint_length_days = 2.0;
  std::size_t stories_per_sprint = 4;
  std::size_t commits_per_dev_per_sprint = 12;
  std::size_t pulls_per_sprint = 4;
  // Files edited threshold_e times per sprint by more than threshold_a
  // authors, i.e. heavily shared code that must not be flagged.
  std::size_t shared_hot_files = 1;
  Timestamp start = from_unix(1420448400);  // 2015-01-05T09:00:00Z
};

FixtureSpec fixture_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const FixtureSpec& spec);

/// Evidence that the generated history is clean: the lint run over it.
struct GuaranteeCertificate {
  std::size_t results_checked = 0;
  std::size_t violations_found = 0;
  std::string config_digest;
};

struct GeneratedFixture {
  ProjectHistory history;
  GuaranteeCertificate certificate;
};

/// Builds a history on which every detector, at `config`, finds nothing.
/// Commits land in sprint interiors away from the closing window, files stay
/// below the edit threshold unless shared by enough authors, stories have
/// near-uniform size and every pull request has comments. Throws
/// InfeasibleError naming the constraint a spec cannot satisfy.
GeneratedFixture generate(const FixtureSpec& spec, const MetricConfig& config = default_config());

struct HotFilesDirective {
  std::size_t count = 0;
  std::size_t edits = 12;
  std::size_t authors = 1;
};

struct HugeStoriesDirective {
  std::size_t count = 0;
  double length_multiplier = 10.0;
};

struct NeverendingDirective {
  std::size_t count = 0;
  std::size_t sprints_each = 3;
};

/// Violations to add, per metric. All injections are additive.
struct InjectionSpec {
  HotFilesDirective hot_files;
  std::size_t tdd_regressions = 0;
  HugeStoriesDirective huge_stories;
  NeverendingDirective neverending_stories;
  std::size_t duplicate_stories = 0;
  std::size_t last_minute_commits = 0;
  std::size_t idle_developers = 0;
  std::size_t silent_fast_pulls = 0;

  bool empty() const;
};

InjectionSpec injection_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const InjectionSpec& spec);

/// Expected artifacts per metric, then per (team, sprint).
struct InjectionLedger {
  using Key = std::pair<TeamId, SprintId>;
  std::map<std::string, std::map<Key, std::set<ArtifactRef>>> expected;

  const std::set<ArtifactRef>& artifacts(std::string_view metric, const TeamId& team, const SprintId& sprint) const;
  std::size_t total(std::string_view metric) const;
};

nlohmann::json to_json(const InjectionLedger& ledger);
InjectionLedger ledger_from_json(const nlohmann::json& doc);

struct InjectedFixture {
  ProjectHistory history;
  InjectionLedger ledger;
};

/// Adds the requested violations to a clean history. Thresholds and windows
/// come from `config`. Throws InfeasibleError when a directive cannot produce
/// exactly the requested violations.
InjectedFixture inject(const ProjectHistory& history, const InjectionSpec& injection, std::uint64_t seed,
                       const MetricConfig& config = default_config());

/// Copies a history back into records that rebuild it exactly.
RawRecords to_raw(const ProjectHistory& history);

/// Writes commits.ndjson, issues.json, sprints.json, pulls.json, stats.csv and
/// a manifest.json carrying `header` under "fixture".
void write_fixture(const std::filesystem::path& dir, const ProjectHistory& history, const nlohmann::json& header);

}  // namespace agilelint
