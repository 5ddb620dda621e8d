#include <benchmark/benchmark.h>

#include <sstream>

#include "agilelint/engine.hpp"
#include "agilelint/fixtures.hpp"
#include "agilelint/ingest.hpp"
#include "agilelint/report.hpp"
#include "agilelint/scoring.hpp"

namespace {

using namespace agilelint;

// Roughly 10k commits over 2 teams, the size the tool is expected to handle.
FixtureSpec scale_spec() {
  FixtureSpec spec;
  spec.seed = 42;
  spec.teams = 2;
  spec.developers_per_team = 6;
  spec.sprints = 6;
  spec.sprint_length_days = 14;
  spec.commits_per_dev_per_sprint = 139;
  spec.stories_per_sprint = 42;
  spec.pulls_per_sprint = 20;
  return spec;
}

const ProjectHistory& scale_history() {
  static const ProjectHistory h = generate(scale_spec()).history;
  return h;
}

void BM_Generate(benchmark::State& state) {
  auto spec = scale_spec();
  for (auto _ : state) benchmark::DoNotOptimize(generate(spec));
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMillisecond);

void BM_RunAll(benchmark::State& state) {
  const auto& h = scale_history();
  const auto config = default_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_all(h, config, static_cast<unsigned>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.commits().size()));
}
BENCHMARK(BM_RunAll)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_LintAndRender(benchmark::State& state) {
  const auto& h = scale_history();
  const auto config = default_config();
  for (auto _ : state) {
    const auto report = lint(h, config);
    benchmark::DoNotOptimize(render_json(report, h));
  }
}
BENCHMARK(BM_LintAndRender)->Unit(benchmark::kMillisecond);

void BM_SnapshotRoundTrip(benchmark::State& state) {
  const auto& h = scale_history();
  for (auto _ : state) {
    std::stringstream buffer;
    write_snapshot(buffer, h);
    benchmark::DoNotOptimize(parse_snapshot(buffer.str()));
  }
}
BENCHMARK(BM_SnapshotRoundTrip)->Unit(benchmark::kMillisecond);

void BM_Window(benchmark::State& state) {
  const auto& h = scale_history();
  const Sprint& s = h.sprints()[h.sprints().size() / 2];
  for (auto _ : state) benchmark::DoNotOptimize(window(h, s.team, s.id));
}
BENCHMARK(BM_Window);

}  // namespace
BENCHMARK_MAIN();
