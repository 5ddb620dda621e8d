// Acceptance suite: prints one PASS/FAIL line per criterion, exits non-zero
// if any criterion fails.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "agilelint/cli.hpp"
#include "agilelint/engine.hpp"
#include "agilelint/fixtures.hpp"
#include "agilelint/ingest.hpp"
#include "agilelint/metrics.hpp"
#include "agilelint/rating.hpp"
#include "agilelint/scoring.hpp"
#include "builders.hpp"
#include "oracle.hpp"

using namespace agilelint;
using namespace agilelint::testing;
namespace fs = std::filesystem;
namespace n = metric_names;

namespace {

struct Verdict {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void fail(std::string note) {
    pass = false;
    if (notes.size() < 10) notes.push_back(std::move(note));
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- 1

Verdict sprint_twelve() {
  Verdict v;
  const auto start = Clock::now();
  const auto h = build_history(sprint12_records());
  const auto u = unfinished_stories(h, "m12", sprint12_now());
  const double elapsed = seconds_since(start);
  if (!u) {
    v.fail("no result for Sprint 12");
    return v;
  }
  if (u->sprint_title != "Sprint 12") v.fail("title " + u->sprint_title);
  if (u->amount != 2) v.fail(fmt::format("amount {}", u->amount));
  if (u->stories != std::vector<std::int64_t>{129, 135}) v.fail("issues differ");
  if (u->total != 10) v.fail(fmt::format("total {}", u->total));
  if (!(u->percent && *u->percent == 0.2)) v.fail("percent is not exactly 0.2");
  if (elapsed >= 1.0) v.fail(fmt::format("took {:.3f} s", elapsed));
  v.summary = fmt::format("Sprint 12: amount {}, issues [{}], total {}, percent {} in {:.1f} ms", u->amount,
                          fmt::join(u->stories, ","), u->total, u->percent.value_or(-1), elapsed * 1000);
  return v;
}

// ------------------------------------------------------------ 2 and 3

const Timestamp kEpoch = ts("2015-03-02T00:00:00Z");
constexpr std::int64_t kSprintSeconds = 7 * 86400;

struct RandomProject {
  RawRecords raw;
  MetricConfig config;
};

RandomProject random_project(std::mt19937_64& gen) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen); };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
  RandomProject p;
  auto& raw = p.raw;
  const int sprints = static_cast<int>(pick(1, 3));
  for (int i = 0; i < sprints; ++i)
    raw.sprints.push_back(sprint(fmt::format("s{}", i + 1), fmt::format("Sprint {}", i + 1),
                                 kEpoch + std::chrono::seconds(i * kSprintSeconds),
                                 kEpoch + std::chrono::seconds((i + 1) * kSprintSeconds)));
  const std::int64_t end = to_unix(kEpoch) + sprints * kSprintSeconds;
  const int authors = static_cast<int>(pick(1, 6));
  const int paths = static_cast<int>(pick(1, 6));
  const int commits = static_cast<int>(pick(0, 40));
  for (int i = 0; i < commits; ++i) {
    // A third of the commits crowd the end of a sprint.
    std::int64_t t = pick(to_unix(kEpoch), end);
    if (pick(0, 2) == 0) t = to_unix(kEpoch) + pick(1, sprints) * kSprintSeconds - pick(0, 4 * 3600);
    std::vector<std::string> files;
    for (int f = 0, nf = static_cast<int>(pick(1, 3)); f < nf; ++f) files.push_back(fmt::format("f{}.cpp", pick(1, paths)));
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    std::vector<std::string> parents;
    if (i > 0) parents.push_back(fmt::format("c{}", pick(0, i - 1)));
    if (i > 1 && pick(0, 9) == 0) parents.push_back(fmt::format("c{}", pick(0, i - 1)));
    if (parents.size() == 2 && parents[0] == parents[1]) parents.pop_back();
    raw.commits.push_back(commit(fmt::format("c{}", i), fmt::format("dev{}@x", pick(1, authors)), from_unix(t), files, parents));
    if (pick(0, 4) != 0) raw.stats.push_back({fmt::format("c{}", i), real(0, 100), static_cast<double>(pick(0, 60))});
  }
  const int stories = static_cast<int>(pick(0, 15));
  for (int i = 1; i <= stories; ++i) {
    std::vector<SprintId> member;
    for (int s = 1; s <= sprints; ++s) {
      if (pick(0, 2) == 0) member.push_back(fmt::format("s{}", s));
    }
    if (member.empty()) member.push_back(fmt::format("s{}", pick(1, sprints)));
    auto st = story(i, member, pick(0, 3) == 0 ? StoryState::open : StoryState::closed);
    st.title = std::string(static_cast<std::size_t>(pick(5, 400)), 'w');
    for (int c = 0, nc = static_cast<int>(pick(0, 8)); c < nc; ++c) st.body += "- [ ] task\n";
    if (pick(0, 4) == 0) st.labels.push_back(pick(0, 1) ? "duplicate" : "Duplicate");
    raw.stories.push_back(st);
  }
  const int pulls = static_cast<int>(pick(0, 8));
  for (int i = 1; i <= pulls; ++i) {
    std::optional<std::int64_t> minutes;
    if (pick(0, 5) != 0) minutes = pick(0, 300);
    raw.pulls.push_back(pull(i, from_unix(pick(to_unix(kEpoch), end - 1)), minutes, pick(0, 2)));
  }

  auto& c = p.config;
  c.collective_ownership.weight = real(0, 40);
  c.collective_ownership.threshold_edits = static_cast<double>(pick(1, 6));
  c.collective_ownership.threshold_authors = static_cast<double>(pick(1, 3));
  c.test_later.weight = real(0, 5);
  c.huge_stories.weight = real(0, 60);
  c.huge_stories.threshold_length = real(1, 4);
  c.huge_stories.threshold_checkboxes = real(1, 4);
  c.multiple_backlogs.weight = real(0, 3);
  c.multiple_backlogs.threshold_amount = static_cast<double>(pick(1, 2));
  c.duplicates.weight = real(0, 5);
  c.last_minute.weight = real(0, 5);
  c.last_minute.window_minutes = real(1, 600);
  c.no_committing.weight = real(0, 20);
  c.daily_story_quota.weight_a = real(0, 400);
  c.daily_story_quota.weight_b = real(0, 200);
  c.fast_pulls.window_minutes = real(1, 240);
  return p;
}

bool max_form(std::string_view metric) { return metric != n::kNoCommitting && metric != n::kDailyStoryQuota; }

Verdict score_range() {
  Verdict v;
  std::mt19937_64 gen(20150302);
  std::map<std::string, std::size_t> evaluated, applicable, empty_checked;
  for (int i = 0; i < 10000; ++i) {
    auto p = random_project(gen);
    const auto h = build_history(p.raw);
    for (const auto& m : builtin_registry().metrics()) {
      const Sprint& s = h.sprints()[static_cast<std::size_t>(i) % h.sprints().size()];
      auto r = *evaluate(m.descriptor.name, h, s.team, s.id, p.config);
      ++evaluated[r.metric];
      if (!r.score) continue;
      ++applicable[r.metric];
      const double value = r.score->value();
      if (!(value >= 0.0 && value <= 100.0)) v.fail(fmt::format("{} scored {}", r.metric, value));
      if (max_form(r.metric) && r.violations.empty()) {
        ++empty_checked[r.metric];
        if (value != 100.0) v.fail(fmt::format("{} scored {} without violations", r.metric, value));
      }
    }
  }
  std::size_t min_applicable = SIZE_MAX;
  for (const auto& [metric, count] : applicable) min_applicable = std::min(min_applicable, count);
  for (const auto& [metric, count] : evaluated) {
    if (count != 10000) v.fail(fmt::format("{} evaluated {} times", metric, count));
  }
  v.summary = fmt::format("10000 random inputs x 9 metrics, at least {} applicable per metric", min_applicable);
  return v;
}

// Mutations that add exactly one violation while keeping the metric's totals.
using Mutation = std::function<bool(RawRecords&, const ProjectHistory&, const SprintSlice&, const MetricConfig&,
                                    std::mt19937_64&)>;

template <typename T>
const T* choose(const std::vector<const T*>& items, std::mt19937_64& gen) {
  if (items.empty()) return nullptr;
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(gen)];
}

std::map<std::string_view, Mutation> mutations() {
  std::map<std::string_view, Mutation> m;
  m[n::kCollectiveOwnership] = [](RawRecords& raw, const ProjectHistory&, const SprintSlice& slice,
                                  const MetricConfig& config, std::mt19937_64&) {
    // A brand-new file edited often by one author; no totals exist for this metric.
    const auto edits = static_cast<int>(std::ceil(config.collective_ownership.threshold_edits));
    for (int e = 0; e < edits; ++e)
      raw.commits.push_back(commit(fmt::format("hot{}", e), "hot@x", slice.sprint->starts_at + std::chrono::hours(1 + e),
                                   {"brand-new.cpp"}));
    return true;
  };
  m[n::kTestLater] = [](RawRecords& raw, const ProjectHistory& h, const SprintSlice& slice, const MetricConfig&,
                        std::mt19937_64& gen) {
    std::set<std::string> has_children;
    for (const auto& c : h.commits())
      for (const auto& p : c.parents) has_children.insert(p);
    std::vector<const Commit*> candidates;
    for (const Commit* c : slice.commits) {
      const BuildStats* own = h.find_stats(c->id);
      if (own == nullptr || c->parents.size() != 1 || has_children.contains(c->id)) continue;
      const BuildStats* parent = h.find_stats(c->parents[0]);
      if (parent == nullptr || parent->coverage_percent <= 0.0) continue;
      if (own->complexity > parent->complexity && own->coverage_percent < parent->coverage_percent) continue;
      candidates.push_back(c);
    }
    const Commit* c = choose(candidates, gen);
    if (c == nullptr) return false;
    const BuildStats* parent = h.find_stats(c->parents[0]);
    for (auto& st : raw.stats) {
      if (st.commit_id == c->id) st = {c->id, parent->coverage_percent / 2, parent->complexity + 1};
    }
    return true;
  };
  m[n::kHugeStories] = [](RawRecords& raw, const ProjectHistory&, const SprintSlice& slice, const MetricConfig&,
                          std::mt19937_64& gen) {
    const UserStory* s = choose(slice.stories, gen);
    if (s == nullptr) return false;
    for (auto& st : raw.stories) {
      if (st.number == s->number) st.title += std::string(st.title.size() * 40 + 4000, 'h');
    }
    return true;
  };
  m[n::kMultipleBacklogs] = [](RawRecords& raw, const ProjectHistory& h, const SprintSlice& slice,
                               const MetricConfig&, std::mt19937_64& gen) {
    std::vector<const UserStory*> candidates;
    for (const UserStory* s : slice.stories) candidates.push_back(s);
    const UserStory* s = choose(candidates, gen);
    if (s == nullptr) return false;
    // Add every earlier sprint the story is not yet in.
    bool added = false;
    for (auto& st : raw.stories) {
      if (st.number != s->number) continue;
      for (const Sprint* sp : h.sprints_of("A")) {
        if (sp->due_on < slice.sprint->due_on && !st.in_sprint(sp->id)) {
          st.sprint_memberships.push_back({sp->id, std::nullopt});
          added = true;
        }
      }
    }
    return added;
  };
  m[n::kDuplicates] = [](RawRecords& raw, const ProjectHistory&, const SprintSlice& slice, const MetricConfig&,
                         std::mt19937_64& gen) {
    const UserStory* s = choose(slice.stories, gen);
    if (s == nullptr) return false;
    for (auto& st : raw.stories) {
      if (st.number == s->number) st.labels.push_back("duplicate");
    }
    return true;
  };
  m[n::kLastMinute] = [](RawRecords& raw, const ProjectHistory&, const SprintSlice& slice, const MetricConfig&,
                         std::mt19937_64& gen) {
    // Move one commit of the sprint onto the due date; the commit count is unchanged.
    const Commit* c = choose(slice.commits, gen);
    if (c == nullptr) return false;
    for (auto& rc : raw.commits) {
      if (rc.id == c->id) rc.authored_at = slice.sprint->due_on;
    }
    return true;
  };
  m[n::kFastPulls] = [](RawRecords& raw, const ProjectHistory&, const SprintSlice& slice, const MetricConfig&,
                        std::mt19937_64& gen) {
    std::vector<const PullRequest*> closed;
    for (const PullRequest* p : slice.pulls) {
      if (p->closed_at) closed.push_back(p);
    }
    const PullRequest* p = choose(closed, gen);
    if (p == nullptr) return false;
    for (auto& rp : raw.pulls) {
      if (rp.number == p->number) {
        rp.closed_at = rp.opened_at;
        rp.comment_count = 0;
      }
    }
    return true;
  };
  return m;
}

double total_of(const MetricResult& r) {
  auto it = r.inputs_echo.find("total");
  return it == r.inputs_echo.end() ? -1.0 : it->second;
}

Verdict monotonicity() {
  Verdict v;
  std::mt19937_64 gen(777);
  const auto muts = mutations();
  std::map<std::string, int> pairs;
  for (const auto& [metric, mutate] : muts) {
    int attempts = 0;
    while (pairs[std::string(metric)] < 1000 && ++attempts < 200000) {
      auto p = random_project(gen);
      const auto h = build_history(p.raw);
      const Sprint& s = h.sprints()[gen() % h.sprints().size()];
      const auto before = *evaluate(metric, h, "A", s.id, p.config);
      if (!before.score) continue;
      RawRecords raw = p.raw;
      if (!mutate(raw, h, window(h, "A", s.id), p.config, gen)) continue;
      const auto h2 = build_history(raw);
      const auto after = *evaluate(metric, h2, "A", s.id, p.config);
      // Only pairs that differ by exactly one violation with the same total qualify.
      if (!after.score || after.violations.size() != before.violations.size() + 1) continue;
      if (total_of(after) != total_of(before)) continue;
      ++pairs[std::string(metric)];
      if (after.score->value() > before.score->value())
        v.fail(fmt::format("{}: {} -> {} after adding a violation", metric, before.score->value(), after.score->value()));
    }
  }
  // Metric 7: more commits never lower the score.
  int m7 = 0;
  while (m7 < 1000) {
    auto p = random_project(gen);
    const auto h = build_history(p.raw);
    const Sprint& s = h.sprints()[gen() % h.sprints().size()];
    const auto before = *evaluate(n::kNoCommitting, h, "A", s.id, p.config);
    if (!before.score) continue;
    RawRecords raw = p.raw;
    const auto developers = h.developers_of("A");
    const int extra = static_cast<int>(gen() % 5) + 1;
    for (int e = 0; e < extra; ++e) {
      auto dev = std::next(developers.begin(), static_cast<long>(gen() % developers.size()));
      raw.commits.push_back(commit(fmt::format("extra{}", e), *dev, s.starts_at + std::chrono::minutes(7 + e), {"x.cpp"}));
    }
    const auto after = *evaluate(n::kNoCommitting, build_history(raw), "A", s.id, p.config);
    ++m7;
    if (after.score->value() < before.score->value())
      v.fail(fmt::format("no_committing: {} -> {} after adding commits", before.score->value(), after.score->value()));
  }
  std::string counts;
  for (const auto& [metric, count] : pairs) {
    counts += fmt::format("{}{}={}", counts.empty() ? "" : ", ", metric, count);
    if (count < 1000) v.fail(fmt::format("{} only reached {} qualifying pairs", metric, count));
  }
  v.summary = fmt::format("pairs: {}, no_committing={}", counts, m7);
  return v;
}

// ---------------------------------------------------------------- 4

InjectionSpec single_injection(std::string_view metric, std::size_t count) {
  InjectionSpec inj;
  if (metric == n::kCollectiveOwnership) inj.hot_files.count = count;
  else if (metric == n::kTestLater) inj.tdd_regressions = count;
  else if (metric == n::kHugeStories) inj.huge_stories.count = count;
  else if (metric == n::kMultipleBacklogs) inj.neverending_stories.count = count;
  else if (metric == n::kDuplicates) inj.duplicate_stories = count;
  else if (metric == n::kLastMinute) inj.last_minute_commits = count;
  else if (metric == n::kNoCommitting) inj.idle_developers = count;
  else if (metric == n::kFastPulls) inj.silent_fast_pulls = count;
  return inj;
}

Verdict injection_oracle() {
  Verdict v;
  const auto config = oracle_config();
  std::map<std::string, std::size_t> runs, artifacts;
  std::size_t quota_checked = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    FixtureSpec spec;
    spec.seed = seed;
    const auto base = generate(spec, config).history;
    for (const auto& m : builtin_registry().metrics()) {
      const std::string& metric = m.descriptor.name;
      if (metric == n::kDailyStoryQuota) continue;  // produces no violations; checked as a non-target below
      try {
        auto fx = inject(base, single_injection(metric, 1 + seed % 3), seed * 1000 + runs.size(), config);
        if (fx.ledger.total(metric) == 0) v.fail(fmt::format("{} seed {}: empty ledger", metric, seed));
        const auto results = run_all(fx.history, config, 1);
        for (const auto& mismatch : oracle_mismatches(results, fx.ledger))
          v.fail(fmt::format("{} seed {}: {}", metric, seed, mismatch));
        for (const auto& r : results) quota_checked += r.metric == n::kDailyStoryQuota;
        ++runs[metric];
        artifacts[metric] += fx.ledger.total(metric);
      } catch (const std::exception& e) {
        v.fail(fmt::format("{} seed {}: {}", metric, seed, e.what()));
      }
    }
  }
  std::string counts;
  for (const auto& [metric, count] : artifacts) counts += fmt::format("{}{}={}", counts.empty() ? "" : ", ", metric, count);
  v.summary = fmt::format("100 seeds x 8 injectable metrics, artifacts matched: {}; daily_story_quota has no violation "
                          "kind, held at 100 with empty ledger in {} results",
                          counts, quota_checked);
  return v;
}

// ---------------------------------------------------------------- 5

Verdict rating_spot_values() {
  Verdict v;
  auto check = [&](const char* what, double got, double want) {
    if (got != want) v.fail(fmt::format("{} = {} (want {})", what, got, want));
  };
  check("threshold_linear(5,10)", threshold_linear(5, 10), 50.0);
  check("ratio_linear(2,10,1,3)", ratio_linear(2, 10, 1, 3).value_or(-1), 40.0);
  check("capped_linear(6,10)", capped_linear(6, 10), 60.0);
  check("cutoff_parabola(0.5,200,100)", cutoff_parabola(0.5, 200, 100), 75.0);
  v.summary = "50, 40, 60, 75 exact";
  return v;
}

// ---------------------------------------------------------------- 6

Verdict aggregation() {
  Verdict v;
  auto result = [](std::string metric, double score, Severity severity) {
    MetricResult r;
    r.metric = std::move(metric);
    r.team = "A";
    r.sprint = "s";
    r.severity = severity;
    r.score = Score(score);
    return r;
  };
  const std::vector<MetricResult> pair{result("a", 100, Severity::high), result("b", 50, Severity::low)};
  const auto overall = aggregate(pair, default_config()).overall.value_or(-1);
  if (std::abs(overall - 90.0) > 1e-9) v.fail(fmt::format("overall {}", overall));

  auto scaled = default_config();
  for (auto& [severity, weight] : scaled.severity_weights) weight *= 7;
  double worst = 0;
  std::size_t compared = 0;
  auto compare = [&](std::span<const MetricResult> results) {
    const auto a = aggregate_all(results, default_config());
    const auto b = aggregate_all(results, scaled);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].overall.has_value() != b[i].overall.has_value()) {
        v.fail("applicability changed under scaling");
        continue;
      }
      if (!a[i].overall) continue;
      worst = std::max(worst, std::abs(*a[i].overall - *b[i].overall));
      ++compared;
    }
  };
  compare(pair);
  std::mt19937_64 gen(6);
  for (int i = 0; i < 2000; ++i) {
    std::vector<MetricResult> rs;
    for (int k = 0; k < 9; ++k)
      rs.push_back(result(fmt::format("m{}", k), std::uniform_real_distribution<double>(0, 100)(gen),
                          kAllSeverities[gen() % 5]));
    compare(rs);
  }
  FixtureSpec spec;
  InjectionSpec inj;
  inj.last_minute_commits = 3;
  inj.duplicate_stories = 2;
  inj.idle_developers = 1;
  const auto fx = inject(generate(spec).history, inj, 3);
  compare(run_all(fx.history, default_config()));
  if (worst > 1e-9) v.fail(fmt::format("scaling by 7 moved an overall score by {}", worst));
  v.summary = fmt::format("{{100@8, 50@2}} -> {:.12f}; x7 weights over {} team-sprints, max drift {:.1e}", overall,
                          compared, worst);
  return v;
}

// ---------------------------------------------------------------- 7

Verdict scale_and_determinism() {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "agilelint-acceptance-scale";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream(root / "spec.json") << R"({"seed": 42, "teams": 2, "developers_per_team": 6, "sprints": 6,
      "sprint_length_days": 14, "commits_per_dev_per_sprint": 139, "stories_per_sprint": 42, "pulls_per_sprint": 20})";
  }
  std::vector<std::string> reports;
  std::vector<double> timings;
  std::size_t commits = 0, stories = 0;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / fmt::format("run{}", run);
    std::ostringstream out, err;
    const auto start = Clock::now();
    int code = cli::run({"generate", "--spec", (root / "spec.json").string(), "--out-dir", (dir / "fixture").string()},
                        out, err);
    if (code == 0)
      code = cli::run({"ingest", "--manifest", (dir / "fixture" / "manifest.json").string(), "--out",
                       (dir / "snapshot.json").string()},
                      out, err);
    if (code == 0)
      code = cli::run({"lint", "--project", (dir / "snapshot.json").string(), "--out", (dir / "report.json").string()},
                      out, err);
    timings.push_back(seconds_since(start));
    if (code != 0) {
      v.fail(fmt::format("run {} exited {}: {}", run, code, err.str()));
      return v;
    }
    reports.push_back(read_file(dir / "report.json"));
    const auto h = read_snapshot(dir / "snapshot.json");
    commits = h.commits().size();
    stories = h.stories().size();
  }
  if (reports[0] != reports[1]) v.fail("reports differ between runs");
  for (double t : timings) {
    if (t >= 5.0) v.fail(fmt::format("pipeline took {:.2f} s", t));
  }
  if (commits < 9500 || commits > 10500) v.fail(fmt::format("{} commits", commits));
  if (stories < 450 || stories > 550) v.fail(fmt::format("{} stories", stories));
  v.summary = fmt::format("{} commits, {} stories; generate+ingest+lint {:.2f} s and {:.2f} s; reports byte-identical ({} bytes)",
                          commits, stories, timings[0], timings[1], reports[0].size());
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"1 unfinished-stories reproduction", sprint_twelve},
      {"2 score range", score_range},
      {"3 monotonicity", monotonicity},
      {"4 injection oracle", injection_oracle},
      {"5 rating spot values", rating_spot_values},
      {"6 aggregation", aggregation},
      {"7 end-to-end determinism and scale", scale_and_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    const auto start = Clock::now();
    try {
      v = check();
    } catch (const std::exception& e) {
      v.fail(fmt::format("exception: {}", e.what()));
    }
    const double elapsed = seconds_since(start);
    std::cout << fmt::format("{} criterion {}: {} [{:.2f} s]\n", v.pass ? "PASS" : "FAIL", name, v.summary, elapsed);
    for (const auto& note : v.notes) std::cout << "    " << note << '\n';
    std::cout.flush();
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
