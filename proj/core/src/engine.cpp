#include "agilelint/engine.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace agilelint {

namespace n = metric_names;

void MetricRegistry::add(RegisteredMetric metric) {
  if (find(metric.descriptor.name) != nullptr)
    throw std::invalid_argument(fmt::format("metric '{}' registered twice", metric.descriptor.name));
  metrics_.push_back(std::move(metric));
}

const RegisteredMetric* MetricRegistry::find(std::string_view name) const {
  auto it = std::find_if(metrics_.begin(), metrics_.end(),
                         [&](const RegisteredMetric& m) { return m.descriptor.name == name; });
  return it == metrics_.end() ? nullptr : &*it;
}

const MetricRegistry& builtin_registry() {
  static const MetricRegistry kRegistry = [] {
    using DetectFn = MetricResult (*)(const SprintSlice&, const MetricConfig&);
    const std::pair<std::string_view, std::pair<RatingKind, DetectFn>> table[] = {
        {n::kCollectiveOwnership, {RatingKind::threshold_linear, &detect_collective_ownership}},
        {n::kTestLater, {RatingKind::ratio_linear, &detect_test_later}},
        {n::kHugeStories, {RatingKind::threshold_linear, &detect_huge_stories}},
        {n::kMultipleBacklogs, {RatingKind::ratio_linear, &detect_multi_backlog}},
        {n::kDuplicates, {RatingKind::ratio_linear, &detect_duplicates}},
        {n::kLastMinute, {RatingKind::ratio_linear, &detect_last_minute}},
        {n::kNoCommitting, {RatingKind::capped_linear, static_cast<DetectFn>(&detect_no_committing)}},
        {n::kDailyStoryQuota, {RatingKind::cutoff_parabola, static_cast<DetectFn>(&detect_daily_story_quota)}},
        {n::kFastPulls, {RatingKind::ratio_linear, &detect_fast_pulls}},
    };
    MetricRegistry registry;
    for (const auto& [name, entry] : table)
      registry.add({builtin_descriptor(name), entry.first, Detector(entry.second)});
    return registry;
  }();
  return kRegistry;
}

namespace {

MetricResult run_detector(const RegisteredMetric& metric, const SprintSlice& slice, const MetricConfig& config) {
  try {
    return metric.detect(slice, config);
  } catch (const std::exception& e) {
    MetricResult r;
    r.metric = metric.descriptor.name;
    r.team = slice.team;
    r.sprint = slice.sprint->id;
    r.severity = effective_severity(metric.descriptor, config);
    r.diagnostic = fmt::format("detector failed: {}", e.what());
    return r;
  }
}

}  // namespace

std::optional<MetricResult> evaluate(const MetricRegistry& registry, std::string_view metric,
                                     const ProjectHistory& history, const TeamId& team, const SprintId& sprint,
                                     const MetricConfig& config) {
  const RegisteredMetric* entry = registry.find(metric);
  if (entry == nullptr) throw LookupError(fmt::format("unknown metric '{}'", metric));
  if (!config.enabled(entry->descriptor.name)) return std::nullopt;
  const SprintSlice slice = window(history, team, sprint);
  return run_detector(*entry, slice, config);
}

std::optional<MetricResult> evaluate(std::string_view metric, const ProjectHistory& history, const TeamId& team,
                                     const SprintId& sprint, const MetricConfig& config) {
  return evaluate(builtin_registry(), metric, history, team, sprint, config);
}

std::vector<MetricResult> run_all(const MetricRegistry& registry, const ProjectHistory& history,
                                  const MetricConfig& config, unsigned threads) {
  std::vector<const Sprint*> tasks;
  for (const auto& team : history.teams()) {
    for (const Sprint* s : history.sprints_of(team)) tasks.push_back(s);
  }
  std::vector<const RegisteredMetric*> enabled;
  for (const auto& m : registry.metrics()) {
    if (config.enabled(m.descriptor.name)) enabled.push_back(&m);
  }

  std::vector<std::vector<MetricResult>> per_task(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const SprintSlice slice = window(history, tasks[i]->team, tasks[i]->id);
      auto& out = per_task[i];
      out.reserve(enabled.size());
      for (const RegisteredMetric* m : enabled) out.push_back(run_detector(*m, slice, config));
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<MetricResult> results;
  results.reserve(tasks.size() * enabled.size());
  for (auto& chunk : per_task) std::move(chunk.begin(), chunk.end(), std::back_inserter(results));
  return results;
}

std::vector<MetricResult> run_all(const ProjectHistory& history, const MetricConfig& config, unsigned threads) {
  return run_all(builtin_registry(), history, config, threads);
}

}  // namespace agilelint
