#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "pref/gateway.hpp"

namespace pref {

/// Deterministic scripted backend. Fixtures are keyed by request_tag (so
/// prompt-template edits do not invalidate them); a strict mode keyed by a
/// hash of the rendered prompt exists for template-regression tests.
///
/// Keys containing '*' are patterns; exact keys win over patterns, and
/// patterns are tried in registration order.
class MockBackend : public ChatBackend {
public:
    enum class KeyMode { Tag, PromptHash };

    explicit MockBackend(KeyMode mode = KeyMode::Tag) : mode_(mode) {}

    /// Registers a fixture; throws DuplicateKey when the key already exists.
    void register_fixture(const std::string& key, const std::string& response);

    /// Loads a JSONL file of {"key": ..., "response": ...} lines.
    void load_fixtures(const std::filesystem::path& path);

    /// The lookup key a request resolves to under the current mode.
    std::string lookup_key(const PromptRequest& request) const;

    BackendReply send(const PromptRequest& request) override;
    BackendKind kind() const override { return BackendKind::Mock; }

private:
    KeyMode mode_;
    mutable std::mutex mutex_;
    std::map<std::string, std::string> exact_;
    std::vector<std::pair<std::string, std::string>> patterns_;
};

/// True when `text` matches `pattern`, where '*' matches any substring.
bool glob_match(const std::string& pattern, const std::string& text);

}  // namespace pref
