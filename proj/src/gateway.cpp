#include "pref/gateway.hpp"

#include <algorithm>
#include <thread>

#include "pref/errors.hpp"

namespace pref {

std::string to_string(BackendKind kind) { return kind == BackendKind::Live ? "live" : "mock"; }

void CallLog::append(CallLogEntry entry) {
    std::lock_guard lock(mutex_);
    entries_.push_back(std::move(entry));
}

std::vector<CallLogEntry> CallLog::snapshot() const {
    std::lock_guard lock(mutex_);
    return entries_;
}

std::size_t CallLog::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::size_t CallLog::count_role(Role role) const {
    std::lock_guard lock(mutex_);
    return static_cast<std::size_t>(std::count_if(
        entries_.begin(), entries_.end(), [&](const CallLogEntry& e) { return e.role == role; }));
}

std::size_t CallLog::count_tag_contains(const std::string& needle) const {
    std::lock_guard lock(mutex_);
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [&](const CallLogEntry& e) {
            return e.request_tag.find(needle) != std::string::npos;
        }));
}

TokenBucketLimiter::TokenBucketLimiter(double requests_per_minute, double burst)
    : rate_per_ms_(requests_per_minute / 60000.0),
      capacity_(burst > 0.0 ? burst : std::max(1.0, requests_per_minute / 60.0)),
      tokens_(capacity_),
      last_refill_(std::chrono::steady_clock::now()) {}

void TokenBucketLimiter::acquire() {
    while (true) {
        std::chrono::milliseconds wait{0};
        {
            std::lock_guard lock(mutex_);
            const auto now = std::chrono::steady_clock::now();
            const auto elapsed =
                std::chrono::duration_cast<std::chrono::milliseconds>(now - last_refill_);
            tokens_ = std::min(capacity_, tokens_ + rate_per_ms_ * elapsed.count());
            last_refill_ = now;
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            const double missing = 1.0 - tokens_;
            wait = std::chrono::milliseconds(
                static_cast<std::int64_t>(missing / rate_per_ms_) + 1);
        }
        std::this_thread::sleep_for(wait);
    }
}

LlmGateway::LlmGateway()
    : sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }),
      jitter_state_(retry_.jitter_seed) {}

void LlmGateway::bind_role(const ModelRole& role, std::shared_ptr<ChatBackend> backend) {
    std::lock_guard lock(mutex_);
    bindings_[role.role] = Binding{role, std::move(backend)};
}

bool LlmGateway::has_role(Role role) const {
    std::lock_guard lock(mutex_);
    return bindings_.find(role) != bindings_.end();
}

ModelRole LlmGateway::bound_role(Role role) const {
    std::lock_guard lock(mutex_);
    auto it = bindings_.find(role);
    if (it == bindings_.end()) {
        throw ConfigError("no backend bound for role: " + to_string(role));
    }
    return it->second.role;
}

void LlmGateway::set_retry_policy(const RetryPolicy& policy) {
    std::lock_guard lock(mutex_);
    retry_ = policy;
    jitter_state_ = policy.jitter_seed;
}

void LlmGateway::set_rate_limit(const std::string& provider, double requests_per_minute) {
    std::lock_guard lock(mutex_);
    if (requests_per_minute <= 0.0) {
        limiters_.erase(provider);
    } else {
        limiters_[provider] = std::make_shared<TokenBucketLimiter>(requests_per_minute);
    }
}

void LlmGateway::set_request_observer(std::function<void(const PromptRequest&)> observer) {
    std::lock_guard lock(mutex_);
    observer_ = std::move(observer);
}

void LlmGateway::set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
    std::lock_guard lock(mutex_);
    sleeper_ = std::move(sleeper);
}

std::chrono::milliseconds LlmGateway::backoff_delay(int attempt) {
    // delay = base * 2^attempt, jittered into [delay/2, delay], capped.
    std::lock_guard lock(mutex_);
    auto delay = std::chrono::milliseconds(retry_.base_delay.count() * (1LL << attempt));
    delay = std::min<std::chrono::milliseconds>(delay, retry_.max_delay);
    // xorshift64 keeps the jitter deterministic for a fixed seed.
    jitter_state_ ^= jitter_state_ << 13;
    jitter_state_ ^= jitter_state_ >> 7;
    jitter_state_ ^= jitter_state_ << 17;
    const auto half = delay.count() / 2;
    const auto jittered = half + static_cast<std::int64_t>(
                                     jitter_state_ % static_cast<std::uint64_t>(half + 1));
    return std::chrono::milliseconds(jittered);
}

Completion LlmGateway::complete(const PromptRequest& request) {
    Binding binding;
    RetryPolicy retry;
    std::function<void(const PromptRequest&)> observer;
    std::function<void(std::chrono::milliseconds)> sleeper;
    std::shared_ptr<TokenBucketLimiter> limiter;
    {
        std::lock_guard lock(mutex_);
        auto it = bindings_.find(request.role_binding.role);
        if (it == bindings_.end()) {
            throw ConfigError("no backend bound for role: " + to_string(request.role_binding.role));
        }
        binding = it->second;
        retry = retry_;
        observer = observer_;
        sleeper = sleeper_;
        auto lim = limiters_.find(binding.role.provider);
        if (lim != limiters_.end()) limiter = lim->second;
    }

    if (observer) observer(request);

    const auto started = std::chrono::steady_clock::now();
    int retries = 0;
    BackendReply reply;
    std::exception_ptr hard_failure;

    for (int attempt = 0; attempt < retry.max_attempts; ++attempt) {
        if (attempt > 0) {
            ++retries;
            sleeper(backoff_delay(attempt - 1));
        }
        if (limiter) limiter->acquire();
        try {
            reply = binding.backend->send(request);
        } catch (...) {
            // Backend-level config problems (e.g. a mock fixture miss) are not
            // retryable; log the call and surface them.
            hard_failure = std::current_exception();
            break;
        }
        const bool success = reply.status == 200 && !reply.text.empty();
        const bool transient =
            reply.status == 0 || reply.status == 429 || reply.status >= 500 ||
            (reply.status == 200 && reply.text.empty());
        if (success || !transient) break;
    }

    CallLogEntry entry;
    entry.request_tag = request.request_tag;
    entry.role = request.role_binding.role;
    entry.backend = binding.backend->kind();
    entry.retry_count = retries;
    entry.timestamp_ms =
        deterministic_clock_
            ? 0
            : std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::system_clock::now().time_since_epoch())
                  .count();
    call_log_.append(entry);

    if (hard_failure) std::rethrow_exception(hard_failure);
    if (reply.status != 200 || reply.text.empty()) {
        throw ProviderError(reply.status, reply.text.empty() ? "empty completion" : reply.text);
    }

    Completion completion;
    completion.text = reply.text;
    completion.usage = reply.usage;
    completion.backend = binding.backend->kind();
    completion.latency_ms =
        deterministic_clock_
            ? 0
            : std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    return completion;
}

}  // namespace pref
