#include "stampforge/records.hpp"

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fcntl.h>
#include <unistd.h>

namespace stampforge {

ordered_json to_json(const BasisRecord& rec) {
  ordered_json j;
  j["kind"] = rec.kind;
  j["params"] = rec.params;
  j["elements"] = rec.elements;
  j["size"] = rec.size;
  j["order"] = rec.order;
  j["verified"] = rec.verified;
  j["created_at"] = rec.created_at;
  j["size_ledger"] = rec.size_ledger;
  return j;
}

BasisRecord record_from_json(const ordered_json& j) {
  BasisRecord rec;
  rec.kind = j.at("kind").get<std::string>();
  rec.params = j.value("params", ordered_json::object());
  rec.elements = j.at("elements").get<std::vector<long long>>();
  rec.size = j.value("size", static_cast<long long>(rec.elements.size()));
  rec.order = j.value("order", 1);
  rec.verified = j.value("verified", false);
  rec.created_at = j.value("created_at", "");
  rec.size_ledger = j.value("size_ledger", ordered_json::object());
  if (rec.size != static_cast<long long>(rec.elements.size()))
    throw std::invalid_argument("BasisRecord: size field disagrees with elements");
  return rec;
}

std::string serialize_record(const BasisRecord& rec) {
  return to_json(rec).dump(2) + "\n";
}

BasisRecord parse_record(const std::string& text) {
  return record_from_json(ordered_json::parse(text));
}

std::string record_timestamp() {
  if (const char* fixed = std::getenv("STAMPFORGE_CREATED_AT")) return fixed;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

class ScopedLock {
 public:
  explicit ScopedLock(const std::string& path) : path_(path + ".lock") {
    for (int attempt = 0; attempt < 200; ++attempt) {
      int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd >= 0) {
        ::close(fd);
        held_ = true;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    throw std::runtime_error("cache lock busy: " + path_);
  }
  ~ScopedLock() {
    if (held_) ::unlink(path_.c_str());
  }

 private:
  std::string path_;
  bool held_ = false;
};

}  // namespace

BasisCache::BasisCache(std::string path) : path_(std::move(path)) { load(); }

std::string BasisCache::resolve_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("STAMPFORGE_CACHE")) return env;
  return "./stampforge_cache.json";
}

std::string BasisCache::key_of(long long n, int h) {
  return "best:n=" + std::to_string(n) + ",h=" + std::to_string(h);
}

std::string BasisCache::key_of(const std::string& kind,
                               const ordered_json& params) {
  return kind + ":" + params.dump();
}

void BasisCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.empty()) return;
  try {
    auto j = ordered_json::parse(text);
    for (auto& [key, val] : j.items()) entries_[key] = record_from_json(val);
  } catch (const std::exception& e) {
    std::string backup = path_ + ".corrupt.bak";
    std::rename(path_.c_str(), backup.c_str());
    std::cerr << "warning: corrupt cache " << path_ << " backed up to "
              << backup << " (" << e.what() << ")\n";
    entries_.clear();
  }
}

void BasisCache::store() const {
  ordered_json j = ordered_json::object();
  for (const auto& [key, rec] : entries_) j[key] = to_json(rec);
  std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache: " + tmp);
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path_.c_str()) != 0)
    throw std::runtime_error("atomic cache replace failed: " + path_);
}

bool BasisCache::put(const std::string& key, const BasisRecord& rec) {
  if (!rec.verified)
    throw std::invalid_argument("cache: refusing to store unverified record");
  ScopedLock lock(path_);
  load();  // pick up concurrent writers
  auto it = entries_.find(key);
  if (it != entries_.end() && it->second.size <= rec.size) return false;
  entries_[key] = rec;
  store();
  return true;
}

std::optional<BasisRecord> BasisCache::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace stampforge
