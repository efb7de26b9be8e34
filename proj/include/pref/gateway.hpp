#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pref/types.hpp"

namespace pref {

enum class BackendKind { Live, Mock };

std::string to_string(BackendKind kind);

struct TokenUsage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
};

struct PromptRequest {
    ModelRole role_binding;
    std::string system;
    std::string user;
    int max_tokens = 1024;
    std::string request_tag;  // "<instance id>/<phase>[/...]", see docs/mock_fixtures.md
};

struct Completion {
    std::string text;
    TokenUsage usage;
    std::int64_t latency_ms = 0;
    BackendKind backend = BackendKind::Mock;
};

struct CallLogEntry {
    std::string request_tag;
    Role role = Role::Coverage;
    BackendKind backend = BackendKind::Mock;
    std::int64_t timestamp_ms = 0;  // 0 when the gateway runs with a deterministic clock
    int retry_count = 0;            // retries folded into the entry, not separate entries
};

/// Append-only, ordered by completion time. One entry per complete() call,
/// success or failure.
class CallLog {
public:
    void append(CallLogEntry entry);
    std::vector<CallLogEntry> snapshot() const;
    std::size_t size() const;
    std::size_t count_role(Role role) const;
    std::size_t count_tag_contains(const std::string& needle) const;

private:
    mutable std::mutex mutex_;
    std::vector<CallLogEntry> entries_;
};

/// Raw reply from a backend before retry classification. status 200 with a
/// non-empty text is success; 0 stands for a transport-level failure.
struct BackendReply {
    int status = 0;
    std::string text;
    TokenUsage usage;
};

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual BackendReply send(const PromptRequest& request) = 0;
    virtual BackendKind kind() const = 0;
};

struct RetryPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{1000};  // delay = base * 2^k, jittered
    std::chrono::milliseconds max_delay{30000};
    std::uint64_t jitter_seed = 42;
};

/// Token bucket; acquire() blocks until a request slot is available.
class TokenBucketLimiter {
public:
    explicit TokenBucketLimiter(double requests_per_minute, double burst = 0.0);
    void acquire();

private:
    std::mutex mutex_;
    double rate_per_ms_;
    double capacity_;
    double tokens_;
    std::chrono::steady_clock::time_point last_refill_;
};

/// Uniform entry point to chat-completion backends. Handles per-role
/// dispatch, retries with exponential backoff, per-provider rate limiting,
/// and call logging. Safe to call from many threads.
class LlmGateway {
public:
    LlmGateway();

    void bind_role(const ModelRole& role, std::shared_ptr<ChatBackend> backend);
    bool has_role(Role role) const;
    ModelRole bound_role(Role role) const;  // throws ConfigError when unbound

    void set_retry_policy(const RetryPolicy& policy);
    void set_rate_limit(const std::string& provider, double requests_per_minute);

    /// With a deterministic clock, log timestamps and completion latencies are
    /// forced to 0 so mock-backend artifacts are byte-stable.
    void set_deterministic_clock(bool on) { deterministic_clock_ = on; }

    /// Test hook: observes every request before dispatch.
    void set_request_observer(std::function<void(const PromptRequest&)> observer);

    /// Test hook: replaces the real backoff sleep.
    void set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper);

    Completion complete(const PromptRequest& request);

    const CallLog& call_log() const { return call_log_; }

private:
    struct Binding {
        ModelRole role;
        std::shared_ptr<ChatBackend> backend;
    };

    std::chrono::milliseconds backoff_delay(int attempt);

    mutable std::mutex mutex_;
    std::map<Role, Binding> bindings_;
    std::map<std::string, std::shared_ptr<TokenBucketLimiter>> limiters_;
    RetryPolicy retry_;
    CallLog call_log_;
    bool deterministic_clock_ = false;
    std::function<void(const PromptRequest&)> observer_;
    std::function<void(std::chrono::milliseconds)> sleeper_;
    std::uint64_t jitter_state_;
};

}  // namespace pref
