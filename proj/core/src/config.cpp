#include "agilelint/config.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "agilelint/ingest.hpp"

namespace agilelint {

using nlohmann::json;

namespace {

enum class FieldKind { weight, threshold };

struct NumberField {
  const char* key;
  double* value;
  FieldKind kind;
};

struct MetricFields {
  std::string_view metric;
  MetricToggle* toggle;
  std::vector<NumberField> numbers;
  std::string* label = nullptr;  // duplicates only
};

std::vector<MetricFields> fields_of(MetricConfig& c) {
  using K = FieldKind;
  namespace n = metric_names;
  return {
      {n::kCollectiveOwnership,
       &c.collective_ownership,
       {{"weight", &c.collective_ownership.weight, K::weight},
        {"threshold_e", &c.collective_ownership.threshold_edits, K::threshold},
        {"threshold_a", &c.collective_ownership.threshold_authors, K::threshold}}},
      {n::kTestLater, &c.test_later, {{"weight", &c.test_later.weight, K::weight}}},
      {n::kHugeStories,
       &c.huge_stories,
       {{"weight", &c.huge_stories.weight, K::weight},
        {"threshold_length", &c.huge_stories.threshold_length, K::threshold},
        {"threshold_check", &c.huge_stories.threshold_checkboxes, K::threshold}}},
      {n::kMultipleBacklogs,
       &c.multiple_backlogs,
       {{"weight", &c.multiple_backlogs.weight, K::weight},
        {"threshold_amount", &c.multiple_backlogs.threshold_amount, K::threshold}}},
      {n::kDuplicates, &c.duplicates, {{"weight", &c.duplicates.weight, K::weight}}, &c.duplicates.duplicate_label},
      {n::kLastMinute,
       &c.last_minute,
       {{"weight", &c.last_minute.weight, K::weight},
        {"window_minutes", &c.last_minute.window_minutes, K::threshold}}},
      {n::kNoCommitting, &c.no_committing, {{"weight", &c.no_committing.weight, K::weight}}},
      {n::kDailyStoryQuota,
       &c.daily_story_quota,
       {{"weight_a", &c.daily_story_quota.weight_a, K::weight},
        {"weight_b", &c.daily_story_quota.weight_b, K::weight}}},
      {n::kFastPulls, &c.fast_pulls, {{"window_minutes", &c.fast_pulls.window_minutes, K::threshold}}},
  };
}

}  // namespace

MetricConfig default_config() { return MetricConfig{}; }

void MetricConfig::validate() const {
  MetricConfig copy = *this;
  for (const auto& m : fields_of(copy)) {
    for (const auto& f : m.numbers) {
      if (!std::isfinite(*f.value))
        throw ConfigError(fmt::format("{}.{} must be a finite number", m.metric, f.key));
      if (f.kind == FieldKind::threshold && !(*f.value > 0.0))
        throw ConfigError(fmt::format("{}.{} must be > 0, got {}", m.metric, f.key, *f.value));
      if (f.kind == FieldKind::weight && !(*f.value >= 0.0))
        throw ConfigError(fmt::format("{}.{} must be >= 0, got {}", m.metric, f.key, *f.value));
    }
    if (m.label != nullptr && m.label->empty()) throw ConfigError(fmt::format("{}.duplicate_label is empty", m.metric));
  }
  for (const Severity s : kAllSeverities) {
    auto it = severity_weights.find(s);
    if (it == severity_weights.end())
      throw ConfigError(fmt::format("severity_weights.{} is missing", to_string(s)));
    if (!(it->second >= 0.0) || !std::isfinite(it->second))
      throw ConfigError(fmt::format("severity_weights.{} must be >= 0", to_string(s)));
  }
}

const MetricToggle& MetricConfig::toggle(std::string_view metric) const {
  return const_cast<MetricConfig*>(this)->toggle(metric);
}

MetricToggle& MetricConfig::toggle(std::string_view metric) {
  if (MetricToggle* t = find_toggle(metric)) return *t;
  throw ConfigError(fmt::format("unknown metric '{}'", metric));
}

const MetricToggle* MetricConfig::find_toggle(std::string_view metric) const {
  return const_cast<MetricConfig*>(this)->find_toggle(metric);
}

MetricToggle* MetricConfig::find_toggle(std::string_view metric) {
  for (auto& m : fields_of(*this)) {
    if (m.metric == metric) return m.toggle;
  }
  return nullptr;
}

bool MetricConfig::enabled(std::string_view metric) const {
  const MetricToggle* t = find_toggle(metric);
  return t == nullptr || t->enabled;
}

double MetricConfig::severity_weight(Severity severity) const {
  auto it = severity_weights.find(severity);
  if (it == severity_weights.end())
    throw ConfigError(fmt::format("no weight configured for severity {}", to_string(severity)));
  return it->second;
}

MetricConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  MetricConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "severity_weights") {
      if (!value.is_object()) throw ConfigError("severity_weights must be an object");
      for (const auto& [sev, weight] : value.items()) {
        auto severity = parse_severity(sev);
        if (!severity) throw ConfigError(fmt::format("unknown severity '{}'", sev));
        if (!weight.is_number()) throw ConfigError(fmt::format("severity_weights.{} must be a number", sev));
        config.severity_weights[*severity] = weight.get<double>();
      }
    } else if (key == "metrics") {
      if (!value.is_object()) throw ConfigError("metrics must be an object");
      auto fields = fields_of(config);
      for (const auto& [name, body] : value.items()) {
        auto it = std::find_if(fields.begin(), fields.end(), [&](const MetricFields& m) { return m.metric == name; });
        if (it == fields.end()) throw ConfigError(fmt::format("unknown metric '{}'", name));
        if (!body.is_object()) throw ConfigError(fmt::format("metrics.{} must be an object", name));
        for (const auto& [field, v] : body.items()) {
          if (field == "enabled") {
            if (!v.is_boolean()) throw ConfigError(fmt::format("metrics.{}.enabled must be a boolean", name));
            it->toggle->enabled = v.get<bool>();
            continue;
          }
          if (field == "severity") {
            if (v.is_null()) {
              it->toggle->severity_override.reset();
              continue;
            }
            auto severity = v.is_string() ? parse_severity(v.get<std::string>()) : std::nullopt;
            if (!severity) throw ConfigError(fmt::format("metrics.{}.severity: unknown severity {}", name, v.dump()));
            it->toggle->severity_override = severity;
            continue;
          }
          if (field == "duplicate_label" && it->label != nullptr) {
            if (!v.is_string()) throw ConfigError(fmt::format("metrics.{}.duplicate_label must be a string", name));
            *it->label = v.get<std::string>();
            continue;
          }
          auto num = std::find_if(it->numbers.begin(), it->numbers.end(),
                                  [&](const NumberField& f) { return field == f.key; });
          if (num == it->numbers.end()) throw ConfigError(fmt::format("metrics.{}: unknown field '{}'", name, field));
          if (!v.is_number()) throw ConfigError(fmt::format("metrics.{}.{} must be a number", name, field));
          *num->value = v.get<double>();
        }
      }
    } else {
      throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
  }
  config.validate();
  return config;
}

MetricConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  try {
    return config_from_json(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

json to_json(const MetricConfig& config) {
  MetricConfig copy = config;
  json metrics = json::object();
  for (const auto& m : fields_of(copy)) {
    json body = json::object();
    body["enabled"] = m.toggle->enabled;
    body["severity"] = m.toggle->severity_override ? json(to_string(*m.toggle->severity_override)) : json(nullptr);
    for (const auto& f : m.numbers) body[f.key] = *f.value;
    if (m.label != nullptr) body["duplicate_label"] = *m.label;
    metrics[std::string(m.metric)] = std::move(body);
  }
  json weights = json::object();
  for (const auto& [sev, w] : config.severity_weights) weights[std::string(to_string(sev))] = w;
  return {{"metrics", std::move(metrics)}, {"severity_weights", std::move(weights)}};
}

std::string config_digest(const MetricConfig& config) {
  const std::string canonical = to_json(config).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace agilelint
