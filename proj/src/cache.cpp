#include "pref/cache.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pref/errors.hpp"
#include "pref/hash.hpp"

namespace pref {

using nlohmann::json;
namespace fs = std::filesystem;

std::string CacheKey::to_string() const {
    // Unit separator keeps the four fields unambiguous without escaping.
    return template_version + "\x1f" + role_fingerprint + "\x1f" + query_id + "\x1f" +
           profile_hash;
}

ResponseCache::ResponseCache(std::string directory) : directory_(std::move(directory)) {
    if (!directory_.empty()) {
        std::error_code ec;
        fs::create_directories(directory_, ec);
        if (ec) throw ConfigError("cannot create cache directory: " + directory_);
    }
}

std::string ResponseCache::entry_path(const CacheKey& key) const {
    return (fs::path(directory_) / (hex64(fnv1a64(key.to_string())) + ".json")).string();
}

std::optional<json> ResponseCache::get(const CacheKey& key) {
    std::lock_guard lock(mutex_);
    const std::string key_string = key.to_string();

    if (directory_.empty()) {
        auto it = memory_.find(key_string);
        if (it == memory_.end()) {
            ++stats_.misses;
            return std::nullopt;
        }
        ++stats_.hits;
        return it->second;
    }

    std::ifstream in(entry_path(key), std::ios::binary);
    if (!in) {
        ++stats_.misses;
        return std::nullopt;
    }
    json entry;
    try {
        in >> entry;
        if (entry.at("key").get<std::string>() != key_string) {
            ++stats_.misses;  // hash collision: a different key owns this file
            return std::nullopt;
        }
        const json& value = entry.at("value");
        if (entry.at("checksum").get<std::string>() != content_hash(value.dump())) {
            ++stats_.corrupt;
            ++stats_.misses;
            return std::nullopt;
        }
        ++stats_.hits;
        return value;
    } catch (const json::exception&) {
        ++stats_.corrupt;
        ++stats_.misses;
        return std::nullopt;
    }
}

void ResponseCache::put(const CacheKey& key, const json& value) {
    std::lock_guard lock(mutex_);
    ++stats_.puts;
    const std::string key_string = key.to_string();

    if (directory_.empty()) {
        memory_[key_string] = value;
        return;
    }

    const json entry{{"key", key_string},
                     {"checksum", content_hash(value.dump())},
                     {"value", value}};
    static std::atomic<unsigned> tmp_counter{0};
    const std::string path = entry_path(key);
    const std::string tmp = path + ".tmp" + std::to_string(tmp_counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache entry: " + tmp);
        out << entry.dump(2) << "\n";
    }
    // rename within one directory is atomic on POSIX; concurrent writers of
    // the same key can only race to install identical content.
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw Error("cannot install cache entry: " + path);
    }
}

CacheStats ResponseCache::stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
}

}  // namespace pref
