#pragma once

// On-disk memo for expensive pure computations, keyed by the SHA-256 of the
// canonical JSON serialization of the inputs.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

namespace halphen {

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  std::optional<nlohmann::json> get(const nlohmann::json& key) const;
  void put(const nlohmann::json& key, const nlohmann::json& value) const;

  const std::filesystem::path& dir() const { return dir_; }
  /// Hex SHA-256 of key.dump() with the schema version folded in.
  static std::string digest(const nlohmann::json& key);

 private:
  std::filesystem::path path_for(const nlohmann::json& key) const;
  std::filesystem::path dir_;
};

/// Cache consulted by library routines on this thread, or nullptr.
Cache* active_cache();

class CacheScope {
 public:
  explicit CacheScope(Cache* cache);
  ~CacheScope();
  CacheScope(const CacheScope&) = delete;
  CacheScope& operator=(const CacheScope&) = delete;

 private:
  Cache* previous_;
};

/// Hex SHA-256 of arbitrary bytes.
std::string sha256_hex(const std::string& data);

}  // namespace halphen
