#include "halphen/cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "halphen/errors.hpp"

namespace halphen {

namespace {
thread_local Cache* tls_cache = nullptr;
constexpr int kCacheSchema = 1;
}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Usage("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Usage("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::string Cache::digest(const nlohmann::json& key) {
  return sha256_hex(nlohmann::json{{"schema", kCacheSchema}, {"key", key}}.dump());
}

std::filesystem::path Cache::path_for(const nlohmann::json& key) const { return dir_ / (digest(key) + ".json"); }

std::optional<nlohmann::json> Cache::get(const nlohmann::json& key) const {
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  try {
    nlohmann::json entry = nlohmann::json::parse(in);
    // Guard against digest collisions and stale formats.
    if (entry.value("schema", 0) != kCacheSchema || entry.at("key") != key) return std::nullopt;
    return entry.at("value");
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void Cache::put(const nlohmann::json& key, const nlohmann::json& value) const {
  const auto path = path_for(key);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Usage("cannot write cache entry " + tmp);
    out << nlohmann::json{{"schema", kCacheSchema}, {"key", key}, {"value", value}}.dump();
  }
  std::filesystem::rename(tmp, path);
}

Cache* active_cache() { return tls_cache; }

CacheScope::CacheScope(Cache* cache) : previous_(tls_cache) { tls_cache = cache; }
CacheScope::~CacheScope() { tls_cache = previous_; }

}  // namespace halphen
