#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "agilelint/config.hpp"
#include "agilelint/history.hpp"
#include "agilelint/metrics.hpp"
#include "agilelint/rating.hpp"

namespace agilelint {

using Detector = std::function<MetricResult(const SprintSlice&, const MetricConfig&)>;

struct RegisteredMetric {
  MetricDescriptor descriptor;
  RatingKind rating;
  Detector detect;
};

/// Metrics in registration order. Names are unique.
class MetricRegistry {
 public:
  /// Throws std::invalid_argument on a duplicate name.
  void add(RegisteredMetric metric);

  const std::vector<RegisteredMetric>& metrics() const { return metrics_; }
  const RegisteredMetric* find(std::string_view name) const;

 private:
  std::vector<RegisteredMetric> metrics_;
};

/// The nine built-in metrics.
const MetricRegistry& builtin_registry();

/// Runs one metric over window(history, team, sprint). Returns nullopt when the
/// metric is disabled. A detector that throws yields a result without score
/// and with the error as diagnostic. Throws LookupError for an unknown metric
/// or sprint.
std::optional<MetricResult> evaluate(const MetricRegistry& registry, std::string_view metric,
                                     const ProjectHistory& history, const TeamId& team, const SprintId& sprint,
                                     const MetricConfig& config);
std::optional<MetricResult> evaluate(std::string_view metric, const ProjectHistory& history, const TeamId& team,
                                     const SprintId& sprint, const MetricConfig& config);

/// Every enabled metric for every team and sprint, ordered by team id, sprint
/// due date, then registration order. `threads` = 0 picks the hardware
/// concurrency.
std::vector<MetricResult> run_all(const MetricRegistry& registry, const ProjectHistory& history,
                                  const MetricConfig& config, unsigned threads = 0);
std::vector<MetricResult> run_all(const ProjectHistory& history, const MetricConfig& config, unsigned threads = 0);

}  // namespace agilelint
