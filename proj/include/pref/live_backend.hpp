#pragma once

#include <string>

#include "pref/gateway.hpp"

namespace pref {

struct ProviderConfig {
    std::string name;
    std::string base_url;      // e.g. "https://api.openai.com/v1" or "http://127.0.0.1:8089/v1"
    std::string api_key_env;   // env var holding the bearer token; empty = no auth header
    double requests_per_minute = 0.0;  // 0 = unlimited
    std::string chat_path = "/chat/completions";
    int timeout_seconds = 120;
};

/// OpenAI-style chat-completions client. Issues one POST per send(); retry
/// and rate-limit policy live in the gateway.
class LiveBackend : public ChatBackend {
public:
    explicit LiveBackend(ProviderConfig config);

    BackendReply send(const PromptRequest& request) override;
    BackendKind kind() const override { return BackendKind::Live; }

    const ProviderConfig& config() const { return config_; }

private:
    ProviderConfig config_;
    std::string scheme_host_;  // "http(s)://host[:port]"
    std::string path_prefix_;  // path portion of base_url
    std::string api_key_;
};

}  // namespace pref
