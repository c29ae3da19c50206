#include "nabla/arcshell/cache.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace nabla {

std::string cache_key(const std::string& operation, const Json& inputs, const std::string& version) {
  const Json material = {{"operation", operation}, {"inputs", inputs}, {"version", version}};
  const auto text = material.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

ResultCache::ResultCache(std::optional<std::filesystem::path> dir, WarningSink warn)
    : dir_(std::move(dir)), warn_(std::move(warn)) {}

bool ResultCache::enabled() const {
  std::error_code ec;
  return dir_ && std::filesystem::is_directory(*dir_, ec);
}

std::optional<Json> ResultCache::lookup(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  const auto path = *dir_ / key;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto entry = Json::parse(buffer.str(), nullptr, false);
  if (entry.is_discarded() || !entry.is_object() || !entry.contains("cache_key") || entry["cache_key"] != key) {
    if (warn_) warn_("cache entry " + path.string() + " is corrupt; recomputing");
    return std::nullopt;
  }
  return entry;
}

void ResultCache::store(const std::string& key, Json entry) const {
  if (!enabled()) return;
  static std::atomic<unsigned long> counter{0};
  entry["cache_key"] = key;
  const auto final_path = *dir_ / key;
  const auto temp_path = *dir_ / (key + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
  {
    std::ofstream out(temp_path, std::ios::trunc);
    if (!out) {
      if (warn_) warn_("cannot write cache entry under " + dir_->string());
      return;
    }
    out << entry.dump() << "\n";
    if (!out) {
      if (warn_) warn_("cannot write cache entry " + temp_path.string());
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp_path, final_path, ec);
  if (ec) {
    std::filesystem::remove(temp_path, ec);
    if (warn_) warn_("cannot publish cache entry " + final_path.string());
  }
}

ResultCache::Outcome ResultCache::fetch(const std::string& key, const std::function<Json()>& compute) {
  if (auto entry = lookup(key)) return {std::move(*entry), true};
  auto entry = compute();
  entry["cache_key"] = key;
  store(key, entry);
  return {std::move(entry), false};
}

}  // namespace nabla
