#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "agilelint/history.hpp"
#include "agilelint/model.hpp"

namespace agilelint {

/// A malformed record. `line` is 1-based; for JSON array documents it is the
/// line on which the offending element starts.
struct ParseIssue {
  std::string source;
  std::size_t line = 0;
  std::string field;
  std::string message;

  std::string to_string() const;
};

template <typename Record>
struct ReadResult {
  std::vector<Record> records;
  std::vector<ParseIssue> errors;

  bool ok() const { return errors.empty(); }
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when any source file has malformed records.
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(std::vector<ParseIssue> issues);

  const std::vector<ParseIssue>& issues() const { return issues_; }

 private:
  std::vector<ParseIssue> issues_;
};

// Commits are newline-delimited JSON objects.
ReadResult<Commit> parse_commits(std::string_view text, std::string_view source = "<commits>");
ReadResult<Commit> read_commits(const std::filesystem::path& path);

// Issues, sprints and pulls are single JSON arrays.
ReadResult<UserStory> parse_issues(std::string_view text, std::string_view source = "<issues>");
ReadResult<UserStory> read_issues(const std::filesystem::path& path);
ReadResult<Sprint> parse_sprints(std::string_view text, std::string_view source = "<sprints>");
ReadResult<Sprint> read_sprints(const std::filesystem::path& path);
ReadResult<PullRequest> parse_pulls(std::string_view text, std::string_view source = "<pulls>");
ReadResult<PullRequest> read_pulls(const std::filesystem::path& path);

// Stats are CSV with the header "commit_id,coverage_percent,complexity".
ReadResult<BuildStats> parse_stats(std::string_view text, std::string_view source = "<stats>");
ReadResult<BuildStats> read_stats(const std::filesystem::path& path);

nlohmann::json to_json(const Commit& commit);
nlohmann::json to_json(const UserStory& story);
nlohmann::json to_json(const Sprint& sprint);
nlohmann::json to_json(const PullRequest& pull);

void write_commits(std::ostream& out, std::span<const Commit> commits);
void write_issues(std::ostream& out, std::span<const UserStory> stories);
void write_sprints(std::ostream& out, std::span<const Sprint> sprints);
void write_pulls(std::ostream& out, std::span<const PullRequest> pulls);
void write_stats(std::ostream& out, std::span<const BuildStats> stats);

/// Where the export files live, plus identity and team overrides.
struct IngestManifest {
  std::optional<std::filesystem::path> commits_path;
  std::optional<std::filesystem::path> issues_path;
  std::optional<std::filesystem::path> sprints_path;
  std::optional<std::filesystem::path> pulls_path;
  std::optional<std::filesystem::path> stats_path;
  std::map<std::string, TeamId> team_map;
  std::map<std::string, DeveloperId> alias_map;
  std::map<TeamId, std::vector<DeveloperId>> roster;

  /// Throws std::invalid_argument when no commits or issues source is given or
  /// two sources share a path.
  void validate() const;

  /// Relative paths in the document resolve against the manifest's directory.
  static IngestManifest load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

struct RecordCounts {
  std::size_t commits = 0;
  std::size_t stories = 0;
  std::size_t sprints = 0;
  std::size_t pulls = 0;
  std::size_t stats = 0;
};

/// Reads every source named in the manifest. Throws IoError for unreadable
/// files and IngestError with every malformed record otherwise.
RawRecords read_sources(const IngestManifest& manifest);

/// read_sources followed by build_history.
ProjectHistory ingest(const IngestManifest& manifest);

RecordCounts count_records(const ProjectHistory& history);

/// A snapshot is one JSON document holding the canonical history.
void write_snapshot(std::ostream& out, const ProjectHistory& history);
ProjectHistory read_snapshot(const std::filesystem::path& path);
ProjectHistory parse_snapshot(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace agilelint
