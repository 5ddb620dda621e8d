#include "agilelint/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "agilelint/config.hpp"
#include "agilelint/fixtures.hpp"
#include "agilelint/ingest.hpp"
#include "agilelint/report.hpp"
#include "agilelint/rng.hpp"
#include "agilelint/scoring.hpp"
#include "agilelint/version.hpp"

namespace agilelint::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Any input problem the user has to fix; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProjectHistory load_project(const fs::path& path) {
  if (fs::is_directory(path)) {
    const fs::path manifest = path / "manifest.json";
    if (!fs::exists(manifest)) throw InputError(fmt::format("{} has no manifest.json", path.string()));
    return ingest(IngestManifest::load(manifest));
  }
  const std::string text = read_file(path);
  json doc = json::parse(text, nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && doc.contains("format")) return parse_snapshot(text);
  return ingest(IngestManifest::load(path));
}

MetricConfig load_effective_config(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr) path = env;
  }
  return path.empty() ? default_config() : load_config(path);
}

json load_json_file(const fs::path& path) {
  json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) throw InputError(fmt::format("{}: not valid JSON", path.string()));
  return doc;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(fmt::format("cannot write {}", path));
  file << content;
}

struct IngestArgs {
  std::string manifest, commits, issues, sprints, pulls, stats, out;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out) {
  IngestManifest manifest;
  if (!a.manifest.empty()) manifest = IngestManifest::load(a.manifest);
  auto set = [](std::optional<fs::path>& slot, const std::string& v) {
    if (!v.empty()) slot = v;
  };
  set(manifest.commits_path, a.commits);
  set(manifest.issues_path, a.issues);
  set(manifest.sprints_path, a.sprints);
  set(manifest.pulls_path, a.pulls);
  set(manifest.stats_path, a.stats);
  manifest.validate();

  const ProjectHistory history = ingest(manifest);
  std::ostringstream snapshot;
  write_snapshot(snapshot, history);
  write_output(a.out, snapshot.str(), out);

  const RecordCounts c = count_records(history);
  std::ostream& summary = (a.out.empty() || a.out == "-") ? std::cerr : out;
  summary << fmt::format("commits {}\nstories {}\nsprints {}\npulls {}\nstats {}\n", c.commits, c.stories,
                         c.sprints, c.pulls, c.stats);
  for (const auto& d : history.diagnostics()) summary << "note: " << d << '\n';
  return kExitOk;
}

struct LintArgs {
  std::string project, config, sprint = "all", format = "json", out, now;
  std::optional<double> fail_below;
  unsigned threads = 0;
};

int cmd_lint(const LintArgs& a, std::ostream& out, std::ostream& err) {
  const MetricConfig config = load_effective_config(a.config);
  const ProjectHistory history = load_project(a.project);
  LintOptions options;
  options.threads = a.threads;
  if (a.sprint != "all") options.sprint_title = a.sprint;
  if (!a.now.empty()) {
    options.now = parse_timestamp(a.now);
    if (!options.now) throw InputError(fmt::format("--now: '{}' is not an ISO-8601 timestamp", a.now));
  }
  const RunReport report = lint(history, config, options);
  write_output(a.out,
               a.format == "markdown" ? render_markdown(report, history) : render_json(report, history), out);

  if (a.fail_below) {
    int failing = 0;
    for (const auto& s : report.scores) {
      if (s.overall && *s.overall < *a.fail_below) {
        err << fmt::format("{}/{} overall {:.1f} below {}\n", s.team, s.sprint, round1(*s.overall), *a.fail_below);
        ++failing;
      }
    }
    if (failing > 0) return kExitPolicy;
  }
  return kExitOk;
}

struct ScoreArgs {
  std::string project, config, out;
};

int cmd_score(const ScoreArgs& a, std::ostream& out) {
  const MetricConfig config = load_effective_config(a.config);
  const ProjectHistory history = load_project(a.project);
  if (history.sprints().empty()) throw InputError("project has no sprints");
  const auto results = run_all(history, config);
  const auto scores = aggregate_all(results, config);
  const auto series = trend(history, results, scores);
  std::ostringstream csv;
  write_trend_csv(csv, series);
  write_output(a.out, csv.str(), out);
  return kExitOk;
}

struct GenerateArgs {
  std::string spec, inject, config, out_dir;
  std::optional<std::uint64_t> seed;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const MetricConfig config = load_effective_config(a.config);
  FixtureSpec spec = a.spec.empty() ? FixtureSpec{} : fixture_spec_from_json(load_json_file(a.spec));
  if (a.seed) spec.seed = *a.seed;
  InjectionSpec injection;
  if (!a.inject.empty()) injection = injection_spec_from_json(load_json_file(a.inject));

  GeneratedFixture base = generate(spec, config);
  // Injection draws from its own stream so the clean baseline does not shift.
  InjectedFixture fixture = inject(base.history, injection, spec.seed ^ 0x9e3779b97f4a7c15ULL, config);

  json header = {{"generator", fmt::format("agilelint {}", kVersion)},
                 {"rng", std::string(Rng::kAlgorithm)},
                 {"seed", spec.seed},
                 {"spec", to_json(spec)},
                 {"injection", to_json(injection)},
                 {"certificate",
                  {{"results_checked", base.certificate.results_checked},
                   {"violations_found", base.certificate.violations_found},
                   {"config_digest", base.certificate.config_digest}}}};
  const fs::path dir = a.out_dir;
  write_fixture(dir, fixture.history, header);
  write_output((dir / "ledger.json").string(), to_json(fixture.ledger).dump(2) + "\n", out);

  const RecordCounts c = count_records(fixture.history);
  out << fmt::format("wrote {}: commits {} stories {} sprints {} pulls {}; ledger {} artifacts\n", dir.string(),
                     c.commits, c.stories, c.sprints, c.pulls, [&] {
                       std::size_t n = 0;
                       for (const auto& [metric, entries] : fixture.ledger.expected) n += fixture.ledger.total(metric);
                       return n;
                     }());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects agile process violations in exported project data", "agilelint"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate export files and write a project snapshot");
  ingest_cmd->add_option("--manifest", ingest_args.manifest, "Manifest JSON naming the source files");
  ingest_cmd->add_option("--commits", ingest_args.commits, "Commits, one JSON object per line");
  ingest_cmd->add_option("--issues", ingest_args.issues, "Issues as a JSON array");
  ingest_cmd->add_option("--sprints", ingest_args.sprints, "Sprints as a JSON array");
  ingest_cmd->add_option("--pulls", ingest_args.pulls, "Pull requests as a JSON array");
  ingest_cmd->add_option("--stats", ingest_args.stats, "Per-commit coverage and complexity CSV");
  ingest_cmd->add_option("--out", ingest_args.out, "Snapshot path (stdout if omitted)");

  LintArgs lint_args;
  auto* lint_cmd = app.add_subcommand("lint", "Run every enabled metric and report violations and scores");
  lint_cmd->add_option("--project", lint_args.project, "Snapshot file, manifest, or fixture directory")->required();
  lint_cmd->add_option("--config", lint_args.config, fmt::format("Config JSON (default: ${})", kConfigEnv));
  lint_cmd->add_option("--sprint", lint_args.sprint, "Sprint title or 'all'");
  lint_cmd->add_option("--format", lint_args.format, "json or markdown")
      ->check(CLI::IsMember({"json", "markdown"}));
  lint_cmd->add_option("--out", lint_args.out, "Report path (stdout if omitted)");
  lint_cmd->add_option("--fail-below", lint_args.fail_below, "Exit 1 when an overall score is below this");
  lint_cmd->add_option("--now", lint_args.now, "Reference time for the unfinished-stories query");
  lint_cmd->add_option("--threads", lint_args.threads, "Worker threads (0: hardware concurrency)");

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "Write per-sprint score trends as CSV");
  score_cmd->add_option("--project", score_args.project, "Snapshot file, manifest, or fixture directory")->required();
  score_cmd->add_option("--config", score_args.config, fmt::format("Config JSON (default: ${})", kConfigEnv));
  score_cmd->add_option("--out", score_args.out, "CSV path (stdout if omitted)");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic fixture and its injection ledger");
  gen_cmd->add_option("--spec", gen_args.spec, "Fixture spec JSON");
  gen_cmd->add_option("--inject", gen_args.inject, "Injection spec JSON");
  gen_cmd->add_option("--seed", gen_args.seed, "Overrides the seed in the spec");
  gen_cmd->add_option("--config", gen_args.config, "Config whose thresholds the fixture respects");
  gen_cmd->add_option("--out-dir", gen_args.out_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (ingest_cmd->parsed()) return cmd_ingest(ingest_args, out);
    if (lint_cmd->parsed()) return cmd_lint(lint_args, out, err);
    if (score_cmd->parsed()) return cmd_score(score_args, out);
    if (gen_cmd->parsed()) return cmd_generate(gen_args, out);
  } catch (const IngestError& e) {
    for (const auto& issue : e.issues()) err << issue.to_string() << '\n';
    return kExitInput;
  } catch (const ValidationError& e) {
    for (const auto& p : e.problems()) err << "invalid: " << p << '\n';
    return kExitInput;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    // ConfigError, LookupError, IoError, bad JSON and bad arguments alike.
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace agilelint::cli
