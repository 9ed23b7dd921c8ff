#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace stampforge {

using ordered_json = nlohmann::ordered_json;

/// Serialized description of a constructed or searched basis.
struct BasisRecord {
  std::string kind;  // trivial | lift | jia_shen | searched | exact_witness
  ordered_json params = ordered_json::object();
  std::vector<long long> elements;
  long long size = 0;
  int order = 1;
  bool verified = false;
  std::string created_at;
  ordered_json size_ledger = ordered_json::object();
};

ordered_json to_json(const BasisRecord& rec);
BasisRecord record_from_json(const ordered_json& j);

/// Stable textual form used for files and round-trip checks.
std::string serialize_record(const BasisRecord& rec);
BasisRecord parse_record(const std::string& text);

/// RFC3339 timestamp; honors STAMPFORGE_CREATED_AT for reproducible runs.
std::string record_timestamp();

/// Best-known-basis cache: one JSON document, atomic replace-on-write,
/// advisory lock file next to it.
class BasisCache {
 public:
  explicit BasisCache(std::string path);

  /// Rejects unverified records; replaces an existing entry only when the
  /// new record is strictly smaller.
  bool put(const std::string& key, const BasisRecord& rec);
  std::optional<BasisRecord> get(const std::string& key) const;

  static std::string key_of(long long n, int h);
  static std::string key_of(const std::string& kind, const ordered_json& params);

  /// Default path: --cache flag, else STAMPFORGE_CACHE, else ./stampforge_cache.json.
  static std::string resolve_path(const std::string& flag_value);

  const std::string& path() const { return path_; }

 private:
  void load();
  void store() const;

  std::string path_;
  std::map<std::string, BasisRecord> entries_;
};

}  // namespace stampforge
