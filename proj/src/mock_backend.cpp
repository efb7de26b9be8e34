#include "pref/mock_backend.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "pref/errors.hpp"
#include "pref/hash.hpp"

namespace pref {

bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0;
    std::size_t t = 0;
    std::size_t star = std::string::npos;
    std::size_t backtrack = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            backtrack = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++backtrack;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

void MockBackend::register_fixture(const std::string& key, const std::string& response) {
    std::lock_guard lock(mutex_);
    if (key.find('*') != std::string::npos) {
        for (const auto& [existing, _] : patterns_) {
            if (existing == key) throw DuplicateKey(key);
        }
        patterns_.emplace_back(key, response);
        return;
    }
    if (!exact_.emplace(key, response).second) throw DuplicateKey(key);
}

void MockBackend::load_fixtures(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mock fixture file: " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("fixture file " + path.string() + " line " +
                              std::to_string(line_no) + ": " + e.what());
        }
        register_fixture(j.at("key").get<std::string>(), j.at("response").get<std::string>());
    }
}

std::string MockBackend::lookup_key(const PromptRequest& request) const {
    if (mode_ == KeyMode::Tag) return request.request_tag;
    return content_hash(request.system + "\x1f" + request.user);
}

BackendReply MockBackend::send(const PromptRequest& request) {
    const std::string key = lookup_key(request);
    std::lock_guard lock(mutex_);
    auto it = exact_.find(key);
    if (it != exact_.end()) {
        return BackendReply{200, it->second, {}};
    }
    for (const auto& [pattern, response] : patterns_) {
        if (glob_match(pattern, key)) {
            return BackendReply{200, response, {}};
        }
    }
    throw MockMiss(key);
}

}  // namespace pref
