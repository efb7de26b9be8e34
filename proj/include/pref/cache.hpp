#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace pref {

/// Cache identity for a produced guideline artifact. Template version and
/// role fingerprint participate so that prompt edits or model swaps can never
/// serve stale rubrics; profile_hash is empty for the coverage stage (g is
/// preference-agnostic) and the hash of the conditioning text for g*.
struct CacheKey {
    std::string template_version;
    std::string role_fingerprint;
    std::string query_id;
    std::string profile_hash;

    std::string to_string() const;
    bool operator==(const CacheKey&) const = default;
};

struct CacheStats {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t puts = 0;
    std::size_t corrupt = 0;

    bool operator==(const CacheStats&) const = default;
};

/// Content-addressed JSON cache. With a directory it persists entries as
/// one file per key (write-temp-then-rename, safe for concurrent writers);
/// with an empty directory string it is purely in-memory. A checksum or
/// stored-key mismatch is treated as a miss, never an error.
class ResponseCache {
public:
    explicit ResponseCache(std::string directory = "");

    std::optional<nlohmann::json> get(const CacheKey& key);
    void put(const CacheKey& key, const nlohmann::json& value);

    CacheStats stats() const;
    bool persistent() const { return !directory_.empty(); }
    std::string entry_path(const CacheKey& key) const;

private:
    std::string directory_;
    mutable std::mutex mutex_;
    std::map<std::string, nlohmann::json> memory_;
    CacheStats stats_;
};

}  // namespace pref
