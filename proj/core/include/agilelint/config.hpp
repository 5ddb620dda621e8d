#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "agilelint/model.hpp"

namespace agilelint {

namespace metric_names {
inline constexpr std::string_view kCollectiveOwnership = "collective_code_ownership";
inline constexpr std::string_view kTestLater = "test_later_development";
inline constexpr std::string_view kHugeStories = "huge_user_stories";
inline constexpr std::string_view kMultipleBacklogs = "multiple_backlogs";
inline constexpr std::string_view kDuplicates = "duplicates";
inline constexpr std::string_view kLastMinute = "last_minute_commits";
inline constexpr std::string_view kNoCommitting = "no_committing";
inline constexpr std::string_view kDailyStoryQuota = "daily_story_quota";
inline constexpr std::string_view kFastPulls = "fast_pull_requests";
}  // namespace metric_names

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricToggle {
  bool enabled = true;
  std::optional<Severity> severity_override;
};

struct CollectiveOwnershipConfig : MetricToggle {
  double weight = 10.0;
  double threshold_edits = 10.0;   // a file is hot at this many edits...
  double threshold_authors = 2.0;  // ...by at most this many authors
};

struct TestLaterConfig : MetricToggle {
  double weight = 2.0;
};

struct HugeStoriesConfig : MetricToggle {
  double weight = 25.0;
  double threshold_length = 3.0;
  double threshold_checkboxes = 3.0;
};

struct MultipleBacklogsConfig : MetricToggle {
  double weight = 1.0;
  double threshold_amount = 1.0;
};

struct DuplicatesConfig : MetricToggle {
  double weight = 1.0;
  std::string duplicate_label = "duplicate";
};

struct LastMinuteConfig : MetricToggle {
  double weight = 1.0;
  double window_minutes = 120.0;
};

struct NoCommittingConfig : MetricToggle {
  double weight = 10.0;
};

struct DailyStoryQuotaConfig : MetricToggle {
  double weight_a = 200.0;
  double weight_b = 100.0;
};

struct FastPullsConfig : MetricToggle {
  double window_minutes = 60.0;
};

/// Every tunable of the metric catalog. Defaults are applied for anything a
/// config document leaves out.
struct MetricConfig {
  CollectiveOwnershipConfig collective_ownership;
  TestLaterConfig test_later;
  HugeStoriesConfig huge_stories;
  MultipleBacklogsConfig multiple_backlogs;
  DuplicatesConfig duplicates;
  LastMinuteConfig last_minute;
  NoCommittingConfig no_committing;
  DailyStoryQuotaConfig daily_story_quota;
  FastPullsConfig fast_pulls;

  std::map<Severity, double> severity_weights{{Severity::informational, 0.0},
                                              {Severity::very_low, 1.0},
                                              {Severity::low, 2.0},
                                              {Severity::normal, 4.0},
                                              {Severity::high, 8.0}};

  /// Throws ConfigError on non-positive thresholds, negative weights or a
  /// missing severity weight.
  void validate() const;

  /// Throws ConfigError for unknown metric names.
  const MetricToggle& toggle(std::string_view metric) const;
  MetricToggle& toggle(std::string_view metric);
  /// nullptr for metrics the config has no section for (custom metrics).
  const MetricToggle* find_toggle(std::string_view metric) const;
  MetricToggle* find_toggle(std::string_view metric);
  /// Metrics without a config section are always enabled.
  bool enabled(std::string_view metric) const;

  double severity_weight(Severity severity) const;
};

MetricConfig default_config();

/// Parses a config document; absent fields keep their defaults, unknown keys
/// are rejected. The result is validated.
MetricConfig config_from_json(const nlohmann::json& doc);
MetricConfig load_config(const std::filesystem::path& path);

/// The fully resolved config, every field present.
nlohmann::json to_json(const MetricConfig& config);

/// SHA-256 of the canonical resolved config, lowercase hex.
std::string config_digest(const MetricConfig& config);

}  // namespace agilelint
