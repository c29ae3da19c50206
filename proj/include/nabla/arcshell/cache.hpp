#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

namespace nabla {

inline constexpr const char* kEngineVersion = "0.1.0";

using Json = nlohmann::json;
using WarningSink = std::function<void(const std::string&)>;

/// Hex SHA-256 of the canonical serialization of (operation, inputs, version).
std::string cache_key(const std::string& operation, const Json& inputs, const std::string& version = kEngineVersion);

/// One JSON file per key under a directory. A missing or unwritable directory
/// makes every lookup a miss and every store a no-op.
class ResultCache {
 public:
  explicit ResultCache(std::optional<std::filesystem::path> dir = std::nullopt, WarningSink warn = {});

  struct Outcome {
    Json entry;
    bool hit = false;
  };

  /// Returns the stored entry for `key`, or computes, stores and returns it.
  /// Entries that fail to parse or do not carry `key` are recomputed and overwritten.
  Outcome fetch(const std::string& key, const std::function<Json()>& compute);

  std::optional<Json> lookup(const std::string& key) const;
  void store(const std::string& key, Json entry) const;

  bool enabled() const;

 private:
  std::optional<std::filesystem::path> dir_;
  WarningSink warn_;
};

}  // namespace nabla
