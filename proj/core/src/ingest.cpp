#include "agilelint/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace agilelint {

using nlohmann::json;

namespace {

struct FieldError {
  std::string field;
  std::string message;
};

[[noreturn]] void fail(std::string field, std::string message) {
  throw FieldError{std::move(field), std::move(message)};
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(key, "missing required field");
  return *it;
}

std::string get_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

// Ids may be exported as strings or integers.
std::string get_id(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  fail(key, "expected a string or integer id");
}

std::string get_text(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) fail(key, "expected a string");
  return it->get<std::string>();
}

std::int64_t get_int(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t get_count(const json& obj, const char* key) {
  const std::int64_t value = get_int(obj, key);
  if (value < 0) fail(key, "must be non-negative");
  return value;
}

bool get_bool(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_boolean()) fail(key, "expected a boolean");
  return v.get<bool>();
}

Timestamp to_timestamp(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected an ISO-8601 timestamp string");
  auto ts = parse_timestamp(v.get_ref<const std::string&>());
  if (!ts) fail(field, fmt::format("invalid timestamp '{}'", v.get<std::string>()));
  return *ts;
}

Timestamp get_time(const json& obj, const char* key) { return to_timestamp(require(obj, key), key); }

std::optional<Timestamp> get_optional_time(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return to_timestamp(*it, key);
}

std::vector<std::string> get_string_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) fail(key, "expected an array of strings");
  for (const auto& e : *it) {
    if (!e.is_string()) fail(key, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Commit commit_from_json(const json& obj) {
  if (!obj.is_object()) fail("", "expected a JSON object");
  Commit c;
  c.id = get_string(obj, "id");
  if (c.id.empty()) fail("id", "must not be empty");
  c.author = get_string(obj, "author");
  c.authored_at = get_time(obj, "authored_at");
  c.parents = get_string_list(obj, "parents");
  c.message = get_text(obj, "message");
  if (auto it = obj.find("files"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) fail("files", "expected an array");
    for (const auto& f : *it) {
      if (!f.is_object()) fail("files", "expected objects {path, added, deleted}");
      FileChange change;
      try {
        change.path = get_string(f, "path");
        if (change.path.empty()) fail("path", "must not be empty");
        change.lines_added = get_count(f, "added");
        change.lines_deleted = get_count(f, "deleted");
      } catch (FieldError& e) {
        e.field = "files." + e.field;
        throw;
      }
      c.files.push_back(std::move(change));
    }
  }
  c.team = get_string(obj, "team");
  return c;
}

UserStory story_from_json(const json& obj) {
  if (!obj.is_object()) fail("", "expected a JSON object");
  UserStory s;
  s.number = get_int(obj, "number");
  if (s.number <= 0) fail("number", "must be positive");
  s.title = get_text(obj, "title");
  s.body = get_text(obj, "body");
  const std::string state = get_string(obj, "state");
  auto parsed = parse_story_state(state);
  if (!parsed) fail("state", fmt::format("expected \"open\" or \"closed\", got '{}'", state));
  s.state = *parsed;
  s.labels = get_string_list(obj, "labels");
  if (auto it = obj.find("milestone_history"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) fail("milestone_history", "expected an array");
    for (const auto& m : *it) {
      if (!m.is_object()) fail("milestone_history", "expected objects {sprint_id, assigned_at}");
      SprintMembership membership;
      try {
        membership.sprint_id = get_id(m, "sprint_id");
        membership.assigned_at = get_optional_time(m, "assigned_at");
      } catch (FieldError& e) {
        e.field = "milestone_history." + e.field;
        throw;
      }
      s.sprint_memberships.push_back(std::move(membership));
    }
  }
  s.assignees = get_string_list(obj, "assignees");
  s.created_at = get_time(obj, "created_at");
  s.closed_at = get_optional_time(obj, "closed_at");
  s.team = get_string(obj, "team");
  return s;
}

Sprint sprint_from_json(const json& obj) {
  if (!obj.is_object()) fail("", "expected a JSON object");
  Sprint s;
  s.id = get_id(obj, "id");
  if (s.id.empty()) fail("id", "must not be empty");
  s.title = get_text(obj, "title");
  s.starts_at = get_time(obj, "starts_at");
  s.due_on = get_time(obj, "due_on");
  if (!(s.starts_at < s.due_on)) fail("due_on", "must be after starts_at");
  s.team = get_string(obj, "team");
  return s;
}

PullRequest pull_from_json(const json& obj) {
  if (!obj.is_object()) fail("", "expected a JSON object");
  PullRequest p;
  p.number = get_int(obj, "number");
  if (p.number <= 0) fail("number", "must be positive");
  p.opened_at = get_time(obj, "opened_at");
  p.closed_at = get_optional_time(obj, "closed_at");
  p.merged = get_bool(obj, "merged");
  p.comment_count = get_count(obj, "comments");
  p.team = get_string(obj, "team");
  return p;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Start offsets of each element of a top-level JSON array. Assumes the
// document already parsed successfully.
std::vector<std::size_t> array_element_offsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  bool expect_element = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (depth == 1 && expect_element && c != ']') {
      offsets.push_back(i);
      expect_element = false;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '[':
      case '{':
        ++depth;
        if (depth == 1 && c == '[') expect_element = true;
        break;
      case ']':
      case '}': --depth; break;
      case ',':
        if (depth == 1) expect_element = true;
        break;
      default: break;
    }
  }
  return offsets;
}

template <typename Record, typename Convert>
ReadResult<Record> parse_array(std::string_view text, std::string_view source, Convert convert) {
  ReadResult<Record> result;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    result.errors.push_back({std::string(source), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "",
                             fmt::format("malformed JSON: {}", e.what())});
    return result;
  }
  if (!doc.is_array()) {
    result.errors.push_back({std::string(source), 1, "", "expected a JSON array of records"});
    return result;
  }
  const auto offsets = array_element_offsets(text);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::size_t line = i < offsets.size() ? line_of_offset(text, offsets[i]) : 0;
    try {
      result.records.push_back(convert(doc[i]));
    } catch (const FieldError& e) {
      result.errors.push_back({std::string(source), line, e.field, e.message});
    }
  }
  return result;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

json time_or_null(const std::optional<Timestamp>& ts) {
  return ts ? json(format_timestamp(*ts)) : json(nullptr);
}

std::string source_name(const std::filesystem::path& path) { return path.string(); }

}  // namespace

std::string ParseIssue::to_string() const {
  if (field.empty()) return fmt::format("{}:{}: {}", source, line, message);
  return fmt::format("{}:{}: {}: {}", source, line, field, message);
}

IngestError::IngestError(std::vector<ParseIssue> issues)
    : std::runtime_error([&] {
        std::string out = fmt::format("{} malformed record(s)", issues.size());
        for (const auto& i : issues) out += "\n  " + i.to_string();
        return out;
      }()),
      issues_(std::move(issues)) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error reading {}", path.string()));
  return std::move(buffer).str();
}

ReadResult<Commit> parse_commits(std::string_view text, std::string_view source) {
  ReadResult<Commit> result;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (trim(line).empty()) continue;
    try {
      result.records.push_back(commit_from_json(json::parse(line.begin(), line.end())));
    } catch (const json::parse_error& e) {
      result.errors.push_back({std::string(source), line_no, "", fmt::format("malformed JSON: {}", e.what())});
    } catch (const FieldError& e) {
      result.errors.push_back({std::string(source), line_no, e.field, e.message});
    }
  }
  return result;
}

ReadResult<Commit> read_commits(const std::filesystem::path& path) {
  return parse_commits(read_file(path), source_name(path));
}

ReadResult<UserStory> parse_issues(std::string_view text, std::string_view source) {
  return parse_array<UserStory>(text, source, story_from_json);
}

ReadResult<UserStory> read_issues(const std::filesystem::path& path) {
  return parse_issues(read_file(path), source_name(path));
}

ReadResult<Sprint> parse_sprints(std::string_view text, std::string_view source) {
  return parse_array<Sprint>(text, source, sprint_from_json);
}

ReadResult<Sprint> read_sprints(const std::filesystem::path& path) {
  return parse_sprints(read_file(path), source_name(path));
}

ReadResult<PullRequest> parse_pulls(std::string_view text, std::string_view source) {
  return parse_array<PullRequest>(text, source, pull_from_json);
}

ReadResult<PullRequest> read_pulls(const std::filesystem::path& path) {
  return parse_pulls(read_file(path), source_name(path));
}

ReadResult<BuildStats> parse_stats(std::string_view text, std::string_view source) {
  ReadResult<BuildStats> result;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line != "commit_id,coverage_percent,complexity") {
        result.errors.push_back({std::string(source), line_no, "",
                                 "expected header \"commit_id,coverage_percent,complexity\""});
        return result;
      }
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 3) {
      result.errors.push_back({std::string(source), line_no, "", fmt::format("expected 3 columns, got {}", cells.size())});
      continue;
    }
    BuildStats st;
    st.commit_id = std::string(cells[0]);
    if (st.commit_id.empty()) {
      result.errors.push_back({std::string(source), line_no, "commit_id", "must not be empty"});
      continue;
    }
    auto coverage = parse_double(cells[1]);
    auto complexity = parse_double(cells[2]);
    if (!coverage) {
      result.errors.push_back({std::string(source), line_no, "coverage_percent", "expected a number"});
      continue;
    }
    if (!complexity) {
      result.errors.push_back({std::string(source), line_no, "complexity", "expected a number"});
      continue;
    }
    if (!(*coverage >= 0.0 && *coverage <= 100.0)) {
      result.errors.push_back({std::string(source), line_no, "coverage_percent",
                               fmt::format("coverage {} for commit {} outside [0, 100]", cells[1], st.commit_id)});
      continue;
    }
    if (!(*complexity >= 0.0)) {
      result.errors.push_back({std::string(source), line_no, "complexity",
                               fmt::format("complexity {} for commit {} is negative", cells[2], st.commit_id)});
      continue;
    }
    st.coverage_percent = *coverage;
    st.complexity = *complexity;
    result.records.push_back(std::move(st));
  }
  return result;
}

ReadResult<BuildStats> read_stats(const std::filesystem::path& path) {
  return parse_stats(read_file(path), source_name(path));
}

json to_json(const Commit& c) {
  json files = json::array();
  for (const auto& f : c.files) files.push_back({{"path", f.path}, {"added", f.lines_added}, {"deleted", f.lines_deleted}});
  return {{"id", c.id},
          {"author", c.author},
          {"authored_at", format_timestamp(c.authored_at)},
          {"parents", c.parents},
          {"message", c.message},
          {"files", std::move(files)},
          {"team", c.team}};
}

json to_json(const UserStory& s) {
  json history = json::array();
  for (const auto& m : s.sprint_memberships)
    history.push_back({{"sprint_id", m.sprint_id}, {"assigned_at", time_or_null(m.assigned_at)}});
  return {{"number", s.number},
          {"title", s.title},
          {"body", s.body},
          {"state", to_string(s.state)},
          {"labels", s.labels},
          {"milestone_history", std::move(history)},
          {"assignees", s.assignees},
          {"created_at", format_timestamp(s.created_at)},
          {"closed_at", time_or_null(s.closed_at)},
          {"team", s.team}};
}

json to_json(const Sprint& s) {
  return {{"id", s.id},
          {"title", s.title},
          {"starts_at", format_timestamp(s.starts_at)},
          {"due_on", format_timestamp(s.due_on)},
          {"team", s.team}};
}

json to_json(const PullRequest& p) {
  return {{"number", p.number},
          {"opened_at", format_timestamp(p.opened_at)},
          {"closed_at", time_or_null(p.closed_at)},
          {"merged", p.merged},
          {"comments", p.comment_count},
          {"team", p.team}};
}

void write_commits(std::ostream& out, std::span<const Commit> commits) {
  for (const auto& c : commits) out << to_json(c).dump() << '\n';
}

namespace {
template <typename Record>
void write_array(std::ostream& out, std::span<const Record> records) {
  json doc = json::array();
  for (const auto& r : records) doc.push_back(to_json(r));
  out << doc.dump(2) << '\n';
}
}  // namespace

void write_issues(std::ostream& out, std::span<const UserStory> stories) { write_array(out, stories); }
void write_sprints(std::ostream& out, std::span<const Sprint> sprints) { write_array(out, sprints); }
void write_pulls(std::ostream& out, std::span<const PullRequest> pulls) { write_array(out, pulls); }

void write_stats(std::ostream& out, std::span<const BuildStats> stats) {
  out << "commit_id,coverage_percent,complexity\n";
  for (const auto& s : stats) out << fmt::format("{},{},{}\n", s.commit_id, s.coverage_percent, s.complexity);
}

void IngestManifest::validate() const {
  if (!commits_path && !issues_path)
    throw std::invalid_argument("manifest needs at least a commits or an issues source");
  std::set<std::filesystem::path> seen;
  for (const auto* p : {&commits_path, &issues_path, &sprints_path, &pulls_path, &stats_path}) {
    if (*p && !seen.insert(p->value().lexically_normal()).second)
      throw std::invalid_argument(fmt::format("manifest lists {} for two sources", p->value().string()));
  }
}

IngestManifest IngestManifest::load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IngestError({{path.string(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "", e.what()}});
  }
  if (!doc.is_object()) throw IngestError({{path.string(), 1, "", "manifest must be a JSON object"}});
  const auto base = path.parent_path();
  IngestManifest m;
  auto read_path = [&](const char* key, std::optional<std::filesystem::path>& slot) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return;
    if (!it->is_string()) throw IngestError({{path.string(), 1, key, "expected a path string"}});
    std::filesystem::path p = it->get<std::string>();
    slot = p.is_absolute() ? p : base / p;
  };
  read_path("commits", m.commits_path);
  read_path("issues", m.issues_path);
  read_path("sprints", m.sprints_path);
  read_path("pulls", m.pulls_path);
  read_path("stats", m.stats_path);
  try {
    if (auto it = doc.find("team_map"); it != doc.end()) m.team_map = it->get<std::map<std::string, TeamId>>();
    if (auto it = doc.find("alias_map"); it != doc.end()) m.alias_map = it->get<std::map<std::string, DeveloperId>>();
    if (auto it = doc.find("roster"); it != doc.end())
      m.roster = it->get<std::map<TeamId, std::vector<DeveloperId>>>();
  } catch (const json::exception& e) {
    throw IngestError({{path.string(), 1, "", fmt::format("invalid map: {}", e.what())}});
  }
  return m;
}

json IngestManifest::to_json() const {
  json doc = json::object();
  auto put = [&](const char* key, const std::optional<std::filesystem::path>& p) {
    if (p) doc[key] = p->generic_string();
  };
  put("commits", commits_path);
  put("issues", issues_path);
  put("sprints", sprints_path);
  put("pulls", pulls_path);
  put("stats", stats_path);
  if (!team_map.empty()) doc["team_map"] = team_map;
  if (!alias_map.empty()) doc["alias_map"] = alias_map;
  if (!roster.empty()) doc["roster"] = roster;
  return doc;
}

RawRecords read_sources(const IngestManifest& manifest) {
  manifest.validate();
  RawRecords raw;
  std::vector<ParseIssue> issues;
  auto take = [&](auto result, auto& target) {
    target = std::move(result.records);
    issues.insert(issues.end(), result.errors.begin(), result.errors.end());
  };
  if (manifest.commits_path) take(read_commits(*manifest.commits_path), raw.commits);
  if (manifest.issues_path) take(read_issues(*manifest.issues_path), raw.stories);
  if (manifest.sprints_path) take(read_sprints(*manifest.sprints_path), raw.sprints);
  if (manifest.pulls_path) take(read_pulls(*manifest.pulls_path), raw.pulls);
  if (manifest.stats_path) take(read_stats(*manifest.stats_path), raw.stats);
  if (!issues.empty()) throw IngestError(std::move(issues));
  raw.team_map = manifest.team_map;
  raw.alias_map = manifest.alias_map;
  raw.roster = manifest.roster;
  return raw;
}

ProjectHistory ingest(const IngestManifest& manifest) { return build_history(read_sources(manifest)); }

RecordCounts count_records(const ProjectHistory& history) {
  return {history.commits().size(), history.stories().size(), history.sprints().size(), history.pulls().size(),
          history.build_stats().size()};
}

void write_snapshot(std::ostream& out, const ProjectHistory& history) {
  json doc = json::object();
  doc["format"] = "agilelint-snapshot";
  doc["version"] = 1;
  json commits = json::array();
  for (const auto& c : history.commits()) commits.push_back(to_json(c));
  json issues = json::array();
  for (const auto& s : history.stories()) issues.push_back(to_json(s));
  json sprints = json::array();
  for (const auto& s : history.sprints()) sprints.push_back(to_json(s));
  json pulls = json::array();
  for (const auto& p : history.pulls()) pulls.push_back(to_json(p));
  json stats = json::array();
  for (const auto& s : history.build_stats())
    stats.push_back({{"commit_id", s.commit_id}, {"coverage_percent", s.coverage_percent}, {"complexity", s.complexity}});
  json developers = json::object();
  for (const auto& [team, devs] : history.developers()) developers[team] = devs;
  doc["commits"] = std::move(commits);
  doc["issues"] = std::move(issues);
  doc["sprints"] = std::move(sprints);
  doc["pulls"] = std::move(pulls);
  doc["stats"] = std::move(stats);
  doc["developers"] = std::move(developers);
  out << doc.dump(1) << '\n';
}

ProjectHistory parse_snapshot(std::string_view text) {
  const std::string source = "<snapshot>";
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw IngestError({{source, line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "", e.what()}});
  }
  if (!doc.is_object() || doc.value("format", "") != "agilelint-snapshot")
    throw IngestError({{source, 1, "format", "not an agilelint snapshot"}});
  RawRecords raw;
  std::vector<ParseIssue> issues;
  auto each = [&](const char* key, auto convert, auto& target) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_array()) {
      issues.push_back({source, 1, key, "expected an array"});
      return;
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      try {
        target.push_back(convert((*it)[i]));
      } catch (const FieldError& e) {
        issues.push_back({source, 0, fmt::format("{}[{}].{}", key, i, e.field), e.message});
      }
    }
  };
  each("commits", commit_from_json, raw.commits);
  each("issues", story_from_json, raw.stories);
  each("sprints", sprint_from_json, raw.sprints);
  each("pulls", pull_from_json, raw.pulls);
  each("stats",
       [](const json& o) {
         BuildStats s;
         s.commit_id = get_string(o, "commit_id");
         const json& cov = require(o, "coverage_percent");
         const json& cx = require(o, "complexity");
         if (!cov.is_number()) fail("coverage_percent", "expected a number");
         if (!cx.is_number()) fail("complexity", "expected a number");
         s.coverage_percent = cov.get<double>();
         s.complexity = cx.get<double>();
         return s;
       },
       raw.stats);
  if (auto it = doc.find("developers"); it != doc.end()) {
    try {
      raw.roster = it->get<std::map<TeamId, std::vector<DeveloperId>>>();
    } catch (const json::exception& e) {
      issues.push_back({source, 1, "developers", e.what()});
    }
  }
  if (!issues.empty()) throw IngestError(std::move(issues));
  return build_history(std::move(raw));
}

ProjectHistory read_snapshot(const std::filesystem::path& path) {
  try {
    return parse_snapshot(read_file(path));
  } catch (const IngestError& e) {
    auto issues = e.issues();
    for (auto& i : issues) i.source = path.string();
    throw IngestError(std::move(issues));
  }
}

}  // namespace agilelint
