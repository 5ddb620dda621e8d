#include "agilelint/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <fmt/format.h>

#include "agilelint/engine.hpp"
#include "agilelint/ingest.hpp"
#include "agilelint/rng.hpp"
#include "agilelint/text.hpp"

namespace agilelint {

using nlohmann::json;
namespace n = metric_names;

namespace {

constexpr std::int64_t kMargin = 1800;  // keep generated activity off sprint boundaries

constexpr std::string_view kFillerWords[] = {
    "the",      "service",  "should",    "allow",   "users",    "to",       "update",   "their",   "profile",
    "settings", "without",  "reloading", "page",    "and",      "show",     "clear",    "feedback", "when",
    "request",  "fails",    "data",      "must",    "persist",  "across",   "sessions", "admin",   "can",
    "review",   "pending",  "changes",   "before",  "they",     "go",       "live",     "search",  "results",
    "list",     "orders",   "by",        "date",    "export",   "report",   "as",       "csv",     "file"};

constexpr std::string_view kLabels[] = {"feature", "enhancement", "bug", "ui", "backend"};

std::string team_name(std::size_t index) {
  if (index < 26) return fmt::format("team-{}", static_cast<char>('a' + index));
  return fmt::format("team-{}", index + 1);
}

std::string random_commit_id(Rng& rng, std::unordered_set<std::string>& used) {
  while (true) {
    std::string id = fmt::format("{:016x}{:016x}{:08x}", rng.next(), rng.next(), rng.next() & 0xffffffffu);
    if (used.insert(id).second) return id;
  }
}

std::int64_t window_seconds(double minutes) { return static_cast<std::int64_t>(std::ceil(minutes * 60.0)); }

struct Interior {
  std::int64_t first;
  std::int64_t last;
};

Interior interior_of(const Sprint& s, const MetricConfig& config) {
  return {to_unix(s.starts_at) + kMargin,
          to_unix(s.due_on) - window_seconds(config.last_minute.window_minutes) - kMargin};
}

// Story text whose normalized length reaches at least `target` characters.
std::string story_body(Rng& rng, std::string_view title, std::size_t target, std::size_t checkboxes) {
  std::string checklist;
  for (std::size_t i = 0; i < checkboxes; ++i)
    checklist += fmt::format("\n- [{}] task {}", rng.chance(0.5) ? 'x' : ' ', i + 1);
  std::string filler;
  while (story_length(title, filler + "\n" + checklist) < target) {
    if (!filler.empty()) filler += ' ';
    filler += kFillerWords[rng.below(std::size(kFillerWords))];
  }
  return filler + "\n" + checklist;
}

UserStory make_story(Rng& rng, const TeamId& team, std::int64_t number, std::size_t target_length,
                     std::size_t checkboxes) {
  UserStory s;
  s.number = number;
  s.team = team;
  s.title = fmt::format("Story {}: deliver increment {}", number, rng.between(1, 999));
  s.body = story_body(rng, s.title, target_length, checkboxes);
  s.labels = {std::string(kLabels[rng.below(std::size(kLabels))])};
  return s;
}

std::size_t normal_story_length(Rng& rng) { return static_cast<std::size_t>(rng.between(280, 320)); }
std::size_t normal_checkboxes(Rng& rng) { return static_cast<std::size_t>(rng.between(2, 3)); }

std::size_t count_violations(std::span<const MetricResult> results) {
  std::size_t total = 0;
  for (const auto& r : results) total += r.violations.size();
  return total;
}

}  // namespace

FixtureSpec fixture_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("fixture spec must be a JSON object");
  FixtureSpec spec;
  for (const auto& [key, value] : doc.items()) {
    auto count = [&](std::size_t& slot) {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
        throw std::invalid_argument(fmt::format("fixture spec: {} must be a non-negative integer", key));
      slot = value.get<std::size_t>();
    };
    if (key == "seed") {
      if (!value.is_number_integer()) throw std::invalid_argument("fixture spec: seed must be an integer");
      spec.seed = value.get<std::uint64_t>();
    } else if (key == "teams") count(spec.teams);
    else if (key == "developers_per_team") count(spec.developers_per_team);
    else if (key == "sprints") count(spec.sprints);
    else if (key == "stories_per_sprint") count(spec.stories_per_sprint);
    else if (key == "commits_per_dev_per_sprint") count(spec.commits_per_dev_per_sprint);
    else if (key == "pulls_per_sprint") count(spec.pulls_per_sprint);
    else if (key == "shared_hot_files") count(spec.shared_hot_files);
    else if (key == "sprint_length_days") {
      if (!value.is_number() || !(value.get<double>() > 0.0))
        throw std::invalid_argument("fixture spec: sprint_length_days must be a positive number");
      spec.sprint_length_days = value.get<double>();
    } else if (key == "start") {
      auto ts = value.is_string() ? parse_timestamp(value.get<std::string>()) : std::nullopt;
      if (!ts) throw std::invalid_argument("fixture spec: start must be an ISO-8601 timestamp");
      spec.start = *ts;
    } else {
      throw std::invalid_argument(fmt::format("fixture spec: unknown field '{}'", key));
    }
  }
  return spec;
}

json to_json(const FixtureSpec& spec) {
  return {{"seed", spec.seed},
          {"teams", spec.teams},
          {"developers_per_team", spec.developers_per_team},
          {"sprints", spec.sprints},
          {"sprint_length_days", spec.sprint_length_days},
          {"stories_per_sprint", spec.stories_per_sprint},
          {"commits_per_dev_per_sprint", spec.commits_per_dev_per_sprint},
          {"pulls_per_sprint", spec.pulls_per_sprint},
          {"shared_hot_files", spec.shared_hot_files},
          {"start", format_timestamp(spec.start)}};
}

GeneratedFixture generate(const FixtureSpec& spec, const MetricConfig& config) {
  config.validate();
  if (!(spec.sprint_length_days > 0.0) || !std::isfinite(spec.sprint_length_days))
    throw InfeasibleError("sprint_length_days must be positive");
  const auto sprint_seconds = static_cast<std::int64_t>(std::llround(spec.sprint_length_days * kSecondsPerDay));
  const bool has_activity = spec.teams > 0 && spec.sprints > 0;
  const std::size_t devs = spec.developers_per_team;
  const std::size_t cpd = spec.commits_per_dev_per_sprint;
  const auto hot_edits = static_cast<std::size_t>(std::ceil(config.collective_ownership.threshold_edits));
  const auto min_sharing_authors = static_cast<std::size_t>(std::floor(config.collective_ownership.threshold_authors)) + 1;

  if (has_activity && sprint_seconds - 2 * kMargin - window_seconds(config.last_minute.window_minutes) <= 0)
    throw InfeasibleError(fmt::format("sprint_length_days {} leaves no room outside the {} minute closing window",
                                      spec.sprint_length_days, config.last_minute.window_minutes));
  if (has_activity && devs > 0 && cpd == 0)
    throw InfeasibleError("commits_per_dev_per_sprint must be at least 1, otherwise every developer is idle");
  if (has_activity && spec.shared_hot_files > 0) {
    if (devs < min_sharing_authors)
      throw InfeasibleError(fmt::format(
          "shared_hot_files needs at least {} developers per team to stay above threshold_a, got {}",
          min_sharing_authors, devs));
    if ((hot_edits + devs - 1) / devs > cpd)
      throw InfeasibleError(fmt::format("shared_hot_files needs {} edits per sprint, more than {} developers x {} commits allow",
                                        hot_edits, devs, cpd));
  }
  if (has_activity && cpd > 0 && hot_edits <= 1)
    throw InfeasibleError("threshold_e must exceed 1 so that single edits are not concentrated ownership");

  Rng rng(spec.seed);
  RawRecords raw;
  std::unordered_set<std::string> used_ids;
  const std::size_t file_cap = hot_edits - 1;
  const std::int64_t pr_min_open = window_seconds(config.fast_pulls.window_minutes) + 600;

  for (std::size_t t = 0; t < spec.teams; ++t) {
    const TeamId team = team_name(t);
    std::vector<DeveloperId> developers;
    for (std::size_t k = 0; k < devs; ++k) developers.push_back(fmt::format("dev{}.{}@example.org", k + 1, team));

    std::vector<std::string> file_pool;
    std::vector<Commit> team_commits;
    std::int64_t story_number = 0;
    std::int64_t pull_number = 0;

    for (std::size_t i = 0; i < spec.sprints; ++i) {
      Sprint sprint;
      sprint.id = fmt::format("{}-s{}", team, i + 1);
      sprint.title = fmt::format("Sprint {}", i + 1);
      sprint.team = team;
      sprint.starts_at = spec.start + std::chrono::seconds(static_cast<std::int64_t>(i) * sprint_seconds);
      sprint.due_on = sprint.starts_at + std::chrono::seconds(sprint_seconds);
      const Interior in = interior_of(sprint, config);

      // by_author[k] holds indices into sprint_commits for developer k
      std::vector<Commit> sprint_commits;
      std::vector<std::vector<std::size_t>> by_author(devs);
      for (std::size_t k = 0; k < devs; ++k) {
        for (std::size_t j = 0; j < cpd; ++j) {
          Commit c;
          c.id = random_commit_id(rng, used_ids);
          c.author = developers[k];
          c.team = team;
          c.authored_at = from_unix(rng.between(in.first, in.last));
          by_author[k].push_back(sprint_commits.size());
          sprint_commits.push_back(std::move(c));
        }
      }
      for (std::size_t h = 0; h < spec.shared_hot_files && devs > 0; ++h) {
        const std::string path = fmt::format("src/shared/core_{}.cpp", h);
        for (std::size_t r = 0; r < hot_edits; ++r) {
          const std::size_t author = (h + r) % devs;
          sprint_commits[by_author[author][r / devs]].files.push_back({path, rng.between(1, 60), rng.between(0, 30)});
        }
      }
      std::map<std::string, std::size_t> edits_this_sprint;
      for (auto& c : sprint_commits) {
        const auto wanted = static_cast<std::size_t>(rng.between(c.files.empty() ? 1 : 0, 2));
        for (std::size_t f = 0; f < wanted; ++f) {
          std::string path;
          for (int attempt = 0; attempt < 4 && path.empty() && !file_pool.empty(); ++attempt) {
            const std::string& candidate = file_pool[rng.below(file_pool.size())];
            const bool in_commit = std::any_of(c.files.begin(), c.files.end(),
                                               [&](const FileChange& fc) { return fc.path == candidate; });
            if (!in_commit && edits_this_sprint[candidate] < file_cap) path = candidate;
          }
          if (path.empty()) {
            file_pool.push_back(fmt::format("src/{}/module_{:03d}.cpp", team, file_pool.size()));
            path = file_pool.back();
          }
          ++edits_this_sprint[path];
          c.files.push_back({path, rng.between(1, 80), rng.between(0, 40)});
        }
        c.message = fmt::format("Work on {} ({} file(s))", c.files.front().path, c.files.size());
      }
      std::move(sprint_commits.begin(), sprint_commits.end(), std::back_inserter(team_commits));

      for (std::size_t s = 0; s < spec.stories_per_sprint; ++s) {
        UserStory story = make_story(rng, team, ++story_number, normal_story_length(rng), normal_checkboxes(rng));
        story.created_at = sprint.starts_at - std::chrono::seconds(rng.between(3600, 3 * kSecondsPerDay));
        story.sprint_memberships.push_back({sprint.id, sprint.starts_at});
        if (devs > 0) story.assignees.push_back(developers[rng.below(devs)]);
        if (rng.chance(0.1)) {
          story.state = StoryState::open;
        } else {
          story.state = StoryState::closed;
          story.closed_at = from_unix(rng.between(in.first, to_unix(sprint.due_on)));
        }
        raw.stories.push_back(std::move(story));
      }

      for (std::size_t p = 0; p < spec.pulls_per_sprint; ++p) {
        PullRequest pr;
        pr.number = ++pull_number;
        pr.team = team;
        pr.opened_at = from_unix(rng.between(in.first, in.last));
        pr.comment_count = rng.between(1, 6);
        // The first pull of a sprint always closes so the metric stays applicable.
        if (p == 0 || rng.chance(0.9)) {
          pr.closed_at = pr.opened_at + std::chrono::seconds(rng.between(pr_min_open, 36 * 3600));
          pr.merged = true;
        }
        raw.pulls.push_back(pr);
      }
      raw.sprints.push_back(std::move(sprint));
    }

    // One linear history per team; coverage never drops on a commit that
    // raises complexity.
    std::sort(team_commits.begin(), team_commits.end(), [](const Commit& a, const Commit& b) {
      return std::tie(a.authored_at, a.id) < std::tie(b.authored_at, b.id);
    });
    std::int64_t complexity = rng.between(80, 200);
    std::int64_t coverage_tenths = rng.between(600, 900);
    for (std::size_t i = 0; i < team_commits.size(); ++i) {
      if (i > 0) {
        team_commits[i].parents = {team_commits[i - 1].id};
        const std::int64_t dc = rng.between(-3, 6);
        const std::int64_t dcov = dc > 0 ? rng.between(0, 5) : rng.between(-10, 10);
        complexity = std::max<std::int64_t>(0, complexity + dc);
        coverage_tenths = std::clamp<std::int64_t>(coverage_tenths + dcov, 0, 1000);
      }
      raw.stats.push_back({team_commits[i].id, static_cast<double>(coverage_tenths) / 10.0,
                           static_cast<double>(complexity)});
    }
    std::move(team_commits.begin(), team_commits.end(), std::back_inserter(raw.commits));
  }

  GeneratedFixture out{build_history(std::move(raw)), {}};
  const auto results = run_all(out.history, config, 1);
  out.certificate.results_checked = results.size();
  out.certificate.violations_found = count_violations(results);
  out.certificate.config_digest = config_digest(config);
  if (out.certificate.violations_found > 0) {
    std::string detail;
    for (const auto& r : results) {
      if (!r.violations.empty()) detail += fmt::format(" {}:{}/{}={}", r.metric, r.team, r.sprint, r.violations.size());
    }
    throw InfeasibleError(fmt::format("spec cannot be generated violation-free at this config:{}", detail));
  }
  return out;
}

bool InjectionSpec::empty() const {
  return hot_files.count == 0 && tdd_regressions == 0 && huge_stories.count == 0 && neverending_stories.count == 0 &&
         duplicate_stories == 0 && last_minute_commits == 0 && idle_developers == 0 && silent_fast_pulls == 0;
}

InjectionSpec injection_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("injection spec must be a JSON object");
  InjectionSpec spec;
  auto as_count = [](const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw std::invalid_argument(fmt::format("injection spec: {} must be a non-negative integer", key));
    return v.get<std::size_t>();
  };
  auto object_fields = [&](const json& v, const std::string& key, auto&& on_field) {
    if (!v.is_object()) throw std::invalid_argument(fmt::format("injection spec: {} must be an object", key));
    for (const auto& [field, value] : v.items()) on_field(field, value, key + "." + field);
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "hot_files") {
      object_fields(value, key, [&](const std::string& f, const json& v, const std::string& path) {
        if (f == "count") spec.hot_files.count = as_count(v, path);
        else if (f == "edits") spec.hot_files.edits = as_count(v, path);
        else if (f == "authors") spec.hot_files.authors = as_count(v, path);
        else throw std::invalid_argument(fmt::format("injection spec: unknown field '{}'", path));
      });
    } else if (key == "huge_stories") {
      object_fields(value, key, [&](const std::string& f, const json& v, const std::string& path) {
        if (f == "count") {
          spec.huge_stories.count = as_count(v, path);
        } else if (f == "length_multiplier") {
          if (!v.is_number() || !(v.get<double>() > 0.0))
            throw std::invalid_argument(fmt::format("injection spec: {} must be a positive number", path));
          spec.huge_stories.length_multiplier = v.get<double>();
        } else {
          throw std::invalid_argument(fmt::format("injection spec: unknown field '{}'", path));
        }
      });
    } else if (key == "neverending_stories") {
      object_fields(value, key, [&](const std::string& f, const json& v, const std::string& path) {
        if (f == "count") spec.neverending_stories.count = as_count(v, path);
        else if (f == "sprints_each") spec.neverending_stories.sprints_each = as_count(v, path);
        else throw std::invalid_argument(fmt::format("injection spec: unknown field '{}'", path));
      });
    } else if (key == "tdd_regressions") spec.tdd_regressions = as_count(value, key);
    else if (key == "duplicate_stories") spec.duplicate_stories = as_count(value, key);
    else if (key == "last_minute_commits") spec.last_minute_commits = as_count(value, key);
    else if (key == "idle_developers") spec.idle_developers = as_count(value, key);
    else if (key == "silent_fast_pulls") spec.silent_fast_pulls = as_count(value, key);
    else throw std::invalid_argument(fmt::format("injection spec: unknown field '{}'", key));
  }
  return spec;
}

json to_json(const InjectionSpec& spec) {
  return {{"hot_files", {{"count", spec.hot_files.count}, {"edits", spec.hot_files.edits}, {"authors", spec.hot_files.authors}}},
          {"tdd_regressions", spec.tdd_regressions},
          {"huge_stories",
           {{"count", spec.huge_stories.count}, {"length_multiplier", spec.huge_stories.length_multiplier}}},
          {"neverending_stories",
           {{"count", spec.neverending_stories.count}, {"sprints_each", spec.neverending_stories.sprints_each}}},
          {"duplicate_stories", spec.duplicate_stories},
          {"last_minute_commits", spec.last_minute_commits},
          {"idle_developers", spec.idle_developers},
          {"silent_fast_pulls", spec.silent_fast_pulls}};
}

const std::set<ArtifactRef>& InjectionLedger::artifacts(std::string_view metric, const TeamId& team,
                                                       const SprintId& sprint) const {
  static const std::set<ArtifactRef> kNone;
  auto m = expected.find(std::string(metric));
  if (m == expected.end()) return kNone;
  auto it = m->second.find({team, sprint});
  return it == m->second.end() ? kNone : it->second;
}

std::size_t InjectionLedger::total(std::string_view metric) const {
  auto m = expected.find(std::string(metric));
  if (m == expected.end()) return 0;
  std::size_t sum = 0;
  for (const auto& [key, set] : m->second) sum += set.size();
  return sum;
}

json to_json(const InjectionLedger& ledger) {
  json metrics = json::object();
  for (const auto& [metric, entries] : ledger.expected) {
    json list = json::array();
    for (const auto& [key, artifacts] : entries) {
      json refs = json::array();
      for (const auto& a : artifacts) refs.push_back({{"kind", to_string(a.kind)}, {"id", a.id}});
      list.push_back({{"team", key.first}, {"sprint", key.second}, {"artifacts", std::move(refs)}});
    }
    metrics[metric] = std::move(list);
  }
  return {{"metrics", std::move(metrics)}};
}

InjectionLedger ledger_from_json(const json& doc) {
  static constexpr ArtifactKind kKinds[] = {ArtifactKind::commit, ArtifactKind::story, ArtifactKind::pull_request,
                                            ArtifactKind::file, ArtifactKind::developer};
  InjectionLedger ledger;
  for (const auto& [metric, list] : doc.at("metrics").items()) {
    auto& entries = ledger.expected[metric];
    for (const auto& e : list) {
      auto& set = entries[{e.at("team").get<std::string>(), e.at("sprint").get<std::string>()}];
      for (const auto& a : e.at("artifacts")) {
        const auto kind_name = a.at("kind").get<std::string>();
        auto kind = std::find_if(std::begin(kKinds), std::end(kKinds),
                                 [&](ArtifactKind k) { return to_string(k) == kind_name; });
        if (kind == std::end(kKinds)) throw std::invalid_argument(fmt::format("unknown artifact kind '{}'", kind_name));
        set.insert({*kind, a.at("id").get<std::string>()});
      }
    }
  }
  return ledger;
}

RawRecords to_raw(const ProjectHistory& history) {
  RawRecords raw;
  raw.commits.assign(history.commits().begin(), history.commits().end());
  raw.stories.assign(history.stories().begin(), history.stories().end());
  raw.sprints.assign(history.sprints().begin(), history.sprints().end());
  raw.pulls.assign(history.pulls().begin(), history.pulls().end());
  raw.stats.assign(history.build_stats().begin(), history.build_stats().end());
  for (const auto& [team, devs] : history.developers()) raw.roster[team].assign(devs.begin(), devs.end());
  return raw;
}

namespace {

class Injector {
 public:
  Injector(const ProjectHistory& base, std::uint64_t seed, const MetricConfig& config)
      : base_(base), rng_(seed), config_(config), raw_(to_raw(base)) {
    for (const auto& c : base.commits()) used_ids_.insert(c.id);
    for (const auto& s : base.stories()) story_numbers_[s.team] = std::max(story_numbers_[s.team], s.number);
    for (const auto& p : base.pulls()) pull_numbers_[p.team] = std::max(pull_numbers_[p.team], p.number);
    for (const auto& s : base.sprints()) sprints_.push_back(&s);
  }

  void hot_files(const HotFilesDirective& d) {
    if (d.count == 0) return;
    const auto& cfg = config_.collective_ownership;
    if (d.authors == 0 || static_cast<double>(d.authors) > cfg.threshold_authors)
      throw InfeasibleError(fmt::format("hot_files.authors must be in [1, {}]", cfg.threshold_authors));
    if (static_cast<double>(d.edits) < cfg.threshold_edits || d.edits < d.authors)
      throw InfeasibleError(fmt::format("hot_files.edits must be at least {} and at least the author count",
                                        cfg.threshold_edits));
    for (std::size_t k = 0; k < d.count; ++k) {
      const Sprint& sprint = pick_sprint();
      std::vector<DeveloperId> devs = base_developers(sprint.team);
      if (devs.size() < d.authors)
        throw InfeasibleError(fmt::format("hot_files.authors {} exceeds the {} developers of {}", d.authors,
                                          devs.size(), sprint.team));
      rng_.shuffle(std::span(devs));
      const std::string path = fmt::format("src/hotspot/{}_{}.cpp", sprint.id, ++hot_counter_);
      const Interior in = interior(sprint);
      for (std::size_t e = 0; e < d.edits; ++e) {
        Commit c = new_commit(sprint, devs[e % d.authors], from_unix(rng_.between(in.first, in.last)));
        c.files = {{path, rng_.between(1, 40), rng_.between(0, 20)}};
        c.message = fmt::format("Rework {}", path);
        raw_.commits.push_back(std::move(c));
      }
      expect(n::kCollectiveOwnership, sprint, file_ref(path));
    }
  }

  void tdd_regressions(std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      // Candidates: baseline commits with stats, coverage left to lose and
      // room before the closing window.
      std::vector<std::pair<const Sprint*, const Commit*>> candidates;
      const Sprint& sprint = pick_sprint_where([&](const Sprint& s) {
        candidates.clear();
        const Interior in = interior(s);
        for (const Commit* c : window(base_, s.team, s.id).commits) {
          const BuildStats* st = base_.find_stats(c->id);
          if (st != nullptr && st->coverage_percent >= 0.1 && to_unix(c->authored_at) <= in.last)
            candidates.emplace_back(&s, c);
        }
        return !candidates.empty();
      });
      const Commit& parent = *candidates[rng_.below(candidates.size())].second;
      const BuildStats& parent_stats = *base_.find_stats(parent.id);
      const Interior in = interior(sprint);
      Commit c = new_commit(sprint, parent.author,
                            from_unix(rng_.between(to_unix(parent.authored_at), in.last)));
      c.parents = {parent.id};
      c.files = {{fmt::format("src/untested/feature_{}.cpp", ++file_counter_), rng_.between(20, 120), 0}};
      c.message = "Add feature without tests";
      const double coverage_drop = static_cast<double>(rng_.between(1, 50)) / 10.0;
      raw_.stats.push_back({c.id, std::max(0.0, parent_stats.coverage_percent - coverage_drop),
                            parent_stats.complexity + static_cast<double>(rng_.between(1, 10))});
      expect(n::kTestLater, sprint, commit_ref(c.id));
      raw_.commits.push_back(std::move(c));
    }
  }

  void duplicate_stories(std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      const Sprint& sprint = pick_sprint();
      UserStory s = normal_story(sprint);
      s.labels.push_back(config_.duplicates.duplicate_label);
      expect(n::kDuplicates, sprint, story_ref(s.number));
      raw_.stories.push_back(std::move(s));
    }
  }

  void neverending_stories(const NeverendingDirective& d) {
    if (d.count == 0) return;
    if (static_cast<double>(d.sprints_each) <= config_.multiple_backlogs.threshold_amount)
      throw InfeasibleError(fmt::format("neverending_stories.sprints_each must exceed threshold_amount {}",
                                        config_.multiple_backlogs.threshold_amount));
    std::vector<TeamId> teams;
    for (const auto& team : base_.teams()) {
      if (base_.sprints_of(team).size() >= d.sprints_each) teams.push_back(team);
    }
    if (teams.empty())
      throw InfeasibleError(fmt::format("no team has {} sprints for neverending stories", d.sprints_each));
    for (std::size_t k = 0; k < d.count; ++k) {
      const TeamId& team = teams[rng_.below(teams.size())];
      const auto sprints = base_.sprints_of(team);
      const std::size_t first = rng_.below(sprints.size() - d.sprints_each + 1);
      UserStory s = normal_story(*sprints[first]);
      s.sprint_memberships.clear();
      for (std::size_t j = 0; j < d.sprints_each; ++j) {
        const Sprint& sprint = *sprints[first + j];
        s.sprint_memberships.push_back({sprint.id, sprint.starts_at});
        if (static_cast<double>(j + 1) > config_.multiple_backlogs.threshold_amount)
          expect(n::kMultipleBacklogs, sprint, story_ref(s.number));
      }
      const Sprint& last = *sprints[first + d.sprints_each - 1];
      s.state = StoryState::closed;
      s.closed_at = from_unix(interior(last).last);
      raw_.stories.push_back(std::move(s));
    }
  }

  void idle_developers(std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      const Sprint& sprint = pick_sprint();
      const DeveloperId dev = fmt::format("idle{}.{}@example.org", ++idle_counter_, sprint.team);
      UserStory s = normal_story(sprint);
      s.assignees = {dev};
      raw_.roster[sprint.team].push_back(dev);
      for (const Sprint* team_sprint : base_.sprints_of(sprint.team))
        expect(n::kNoCommitting, *team_sprint, developer_ref(dev));
      raw_.stories.push_back(std::move(s));
    }
  }

  void huge_stories(const HugeStoriesDirective& d) {
    if (d.count == 0) return;
    if (d.count > sprints_.size())
      throw InfeasibleError(fmt::format("huge_stories.count {} exceeds the {} available sprints", d.count,
                                        sprints_.size()));
    std::vector<const Sprint*> order = sprints_;
    rng_.shuffle(std::span(order));
    const auto& cfg = config_.huge_stories;
    for (std::size_t k = 0; k < d.count; ++k) {
      const Sprint& sprint = *order[k];
      double sum = 0.0;
      std::size_t backlog = 0;
      for (const auto& s : raw_.stories) {
        if (s.team != sprint.team || !s.in_sprint(sprint.id)) continue;
        sum += static_cast<double>(story_length(s));
        ++backlog;
      }
      if (backlog == 0)
        throw InfeasibleError(fmt::format("huge story needs existing stories in sprint {} to compare against", sprint.id));
      const auto target = static_cast<std::size_t>(std::ceil(d.length_multiplier * sum / static_cast<double>(backlog)));
      UserStory s = new_story(sprint);
      s.title = fmt::format("Story {}: everything at once", s.number);
      s.body = story_body(rng_, s.title, target, normal_checkboxes(rng_));
      const double length = static_cast<double>(story_length(s));
      const double new_avg = (sum + length) / static_cast<double>(backlog + 1);
      if (!(length > cfg.threshold_length * new_avg))
        throw InfeasibleError(fmt::format(
            "huge story of {} characters does not exceed {} x average {:.1f} in sprint {}; raise length_multiplier",
            length, cfg.threshold_length, new_avg, sprint.id));
      expect(n::kHugeStories, sprint, story_ref(s.number));
      raw_.stories.push_back(std::move(s));
    }
  }

  void last_minute_commits(std::size_t count) {
    const std::int64_t span = static_cast<std::int64_t>(std::floor(config_.last_minute.window_minutes * 60.0));
    for (std::size_t k = 0; k < count; ++k) {
      const Sprint& sprint = pick_sprint_where([&](const Sprint& s) { return !base_developers(s.team).empty(); });
      const auto devs = base_developers(sprint.team);
      const std::int64_t due = to_unix(sprint.due_on);
      Commit c = new_commit(sprint, devs[rng_.below(devs.size())], from_unix(rng_.between(due - span, due)));
      c.files = {{fmt::format("src/late/fix_{}.cpp", ++file_counter_), rng_.between(1, 30), rng_.between(0, 10)}};
      c.message = "Last fixes before the review";
      expect(n::kLastMinute, sprint, commit_ref(c.id));
      raw_.commits.push_back(std::move(c));
    }
  }

  void silent_fast_pulls(std::size_t count) {
    const std::int64_t limit = window_seconds(config_.fast_pulls.window_minutes) - 1;
    if (count > 0 && limit < 1)
      throw InfeasibleError("fast_pull_requests window is too short to place a pull request inside it");
    for (std::size_t k = 0; k < count; ++k) {
      const Sprint& sprint = pick_sprint();
      const Interior in = interior(sprint);
      PullRequest pr;
      pr.number = ++pull_numbers_[sprint.team];
      pr.team = sprint.team;
      pr.opened_at = from_unix(rng_.between(in.first, in.last));
      pr.closed_at = pr.opened_at + std::chrono::seconds(rng_.between(1, limit));
      pr.merged = true;
      pr.comment_count = 0;
      expect(n::kFastPulls, sprint, pull_ref(pr.number));
      raw_.pulls.push_back(pr);
    }
  }

  InjectedFixture finish() { return {build_history(std::move(raw_)), std::move(ledger_)}; }

 private:
  const Sprint& pick_sprint() {
    if (sprints_.empty()) throw InfeasibleError("history has no sprints to inject into");
    return *sprints_[rng_.below(sprints_.size())];
  }

  template <typename Pred>
  const Sprint& pick_sprint_where(Pred&& pred) {
    std::vector<const Sprint*> order = sprints_;
    rng_.shuffle(std::span(order));
    for (const Sprint* s : order) {
      if (pred(*s)) return *s;
    }
    throw InfeasibleError("no sprint offers the artifacts this injection needs");
  }

  Interior interior(const Sprint& s) const {
    Interior in = interior_of(s, config_);
    if (in.last < in.first) throw InfeasibleError(fmt::format("sprint {} is shorter than the closing window", s.id));
    return in;
  }

  std::vector<DeveloperId> base_developers(const TeamId& team) const {
    const auto& devs = base_.developers_of(team);
    return {devs.begin(), devs.end()};
  }

  Commit new_commit(const Sprint& sprint, const DeveloperId& author, Timestamp at) {
    Commit c;
    c.id = random_commit_id(rng_, used_ids_);
    c.author = author;
    c.team = sprint.team;
    c.authored_at = at;
    // Attach to the newest baseline commit of the team that precedes it.
    const Commit* parent = nullptr;
    for (const auto& existing : base_.commits()) {
      if (existing.authored_at > at) break;
      if (existing.team == sprint.team) parent = &existing;
    }
    if (parent != nullptr) c.parents = {parent->id};
    return c;
  }

  UserStory new_story(const Sprint& sprint) {
    UserStory s;
    s.number = ++story_numbers_[sprint.team];
    s.team = sprint.team;
    s.created_at = sprint.starts_at;
    s.sprint_memberships = {{sprint.id, sprint.starts_at}};
    s.state = StoryState::open;
    return s;
  }

  UserStory normal_story(const Sprint& sprint) {
    UserStory s = make_story(rng_, sprint.team, ++story_numbers_[sprint.team], normal_story_length(rng_),
                             normal_checkboxes(rng_));
    s.created_at = sprint.starts_at;
    s.sprint_memberships = {{sprint.id, sprint.starts_at}};
    const auto devs = base_developers(sprint.team);
    if (!devs.empty()) s.assignees = {devs[rng_.below(devs.size())]};
    return s;
  }

  void expect(std::string_view metric, const Sprint& sprint, ArtifactRef artifact) {
    ledger_.expected[std::string(metric)][{sprint.team, sprint.id}].insert(std::move(artifact));
  }

  const ProjectHistory& base_;
  Rng rng_;
  const MetricConfig& config_;
  RawRecords raw_;
  InjectionLedger ledger_;
  std::vector<const Sprint*> sprints_;
  std::unordered_set<std::string> used_ids_;
  std::map<TeamId, std::int64_t> story_numbers_;
  std::map<TeamId, std::int64_t> pull_numbers_;
  std::size_t hot_counter_ = 0;
  std::size_t file_counter_ = 0;
  std::size_t idle_counter_ = 0;
};

}  // namespace

InjectedFixture inject(const ProjectHistory& history, const InjectionSpec& injection, std::uint64_t seed,
                       const MetricConfig& config) {
  config.validate();
  Injector injector(history, seed, config);
  injector.hot_files(injection.hot_files);
  injector.tdd_regressions(injection.tdd_regressions);
  injector.last_minute_commits(injection.last_minute_commits);
  injector.silent_fast_pulls(injection.silent_fast_pulls);
  injector.duplicate_stories(injection.duplicate_stories);
  injector.neverending_stories(injection.neverending_stories);
  injector.idle_developers(injection.idle_developers);
  // Huge stories last: their size is judged against the final backlog.
  injector.huge_stories(injection.huge_stories);
  return injector.finish();
}

void write_fixture(const std::filesystem::path& dir, const ProjectHistory& history, const json& header) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write {}", (dir / name).string()));
    return out;
  };
  {
    auto out = open("commits.ndjson");
    write_commits(out, history.commits());
  }
  {
    auto out = open("issues.json");
    write_issues(out, history.stories());
  }
  {
    auto out = open("sprints.json");
    write_sprints(out, history.sprints());
  }
  {
    auto out = open("pulls.json");
    write_pulls(out, history.pulls());
  }
  {
    auto out = open("stats.csv");
    write_stats(out, history.build_stats());
  }
  json manifest = {{"commits", "commits.ndjson"}, {"issues", "issues.json"}, {"sprints", "sprints.json"},
                   {"pulls", "pulls.json"},       {"stats", "stats.csv"}};
  json roster = json::object();
  for (const auto& [team, devs] : history.developers()) roster[team] = devs;
  manifest["roster"] = std::move(roster);
  if (!header.is_null()) manifest["fixture"] = header;
  auto out = open("manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace agilelint
