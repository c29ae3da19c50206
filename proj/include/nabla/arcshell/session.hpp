#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nabla/arcshell/cache.hpp"
#include "nabla/arcshell/script.hpp"
#include "nabla/error.hpp"
#include "nabla/serieskit/series.hpp"

namespace nabla {

struct ShellOptions {
  /// Field for rings declared before any `field` statement.
  FieldSpec default_field = FieldSpec::rationals();
  unsigned max_depth = 6;
  std::size_t truncation = 6;
  std::optional<std::filesystem::path> cache_dir;
};

struct ResultFlags {
  bool certified = false;
  bool stabilized = false;
  bool cache_hit = false;
};

struct ResultRecord {
  std::string handle;
  std::string command;
  std::size_t line = 0;
  Json inputs;
  Json payload;
  ResultFlags flags;
  std::string cache_key;
  std::string engine_version = kEngineVersion;
  long long timing_ms = 0;

  Json to_json() const;
};

/// Command failure, tagged with the script line and command.
class CommandError : public Error {
 public:
  CommandError(ErrorCode code, std::size_t line, const std::string& command, const std::string& message)
      : Error(code, "line " + std::to_string(line) + " (" + command + "): " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Evaluates the commands of one script. Results are memoised per session and
/// persisted through the cache when a cache directory is configured.
class Session {
 public:
  Session(Script script, ShellOptions options, WarningSink warn = {});
  ~Session();

  const Script& script() const noexcept;

  /// `handle` is a command binding or the rendering of an unbound command.
  /// Errors: UnboundName, CommandError.
  const ResultRecord& execute(const std::string& handle);

  std::vector<ResultRecord> execute_all();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Human-readable rendering of a record.
std::string render_text(const ResultRecord& record);

/// Sorted-key JSON rendering of a record.
std::string render_json(const ResultRecord& record);

/// Payload builders shared with tests.
Json presentation_payload(const SchemePresentation& x);
Json class_payload(const MotivicClass& c);
Json series_payload(const TruncatedSeries& s, const std::optional<RationalSeriesForm>& form);

/// Drops timing and cache-hit fields, recursively, for determinism comparisons.
Json strip_volatile(Json record);

}  // namespace nabla
