#include "pref/live_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "pref/errors.hpp"

namespace pref {

namespace {

// Splits "https://host:port/prefix" into scheme://host:port and /prefix.
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
    const auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("base_url must start with http:// or https://, got: " + base_url);
    }
    const auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {base_url, ""};
    }
    std::string prefix = base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path_start), prefix};
}

}  // namespace

LiveBackend::LiveBackend(ProviderConfig config) : config_(std::move(config)) {
    auto [scheme_host, prefix] = split_base_url(config_.base_url);
    scheme_host_ = std::move(scheme_host);
    path_prefix_ = std::move(prefix);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme_host_.rfind("https", 0) == 0) {
        throw ConfigError("built without TLS support; https base_url unavailable: " +
                          config_.base_url);
    }
#endif
    if (!config_.api_key_env.empty()) {
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (key == nullptr || *key == '\0') {
            throw ConfigError("credential env var not set: " + config_.api_key_env);
        }
        api_key_ = key;
    }
}

BackendReply LiveBackend::send(const PromptRequest& request) {
    nlohmann::json body{
        {"model", request.role_binding.model_name},
        {"temperature", request.role_binding.temperature},
        {"max_tokens", request.max_tokens},
        {"messages",
         nlohmann::json::array({
             nlohmann::json{{"role", "system"}, {"content", request.system}},
             nlohmann::json{{"role", "user"}, {"content", request.user}},
         })},
    };

    httplib::Client client(scheme_host_);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);
    httplib::Headers headers;
    if (!api_key_.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key_);
    }

    auto res = client.Post(path_prefix_ + config_.chat_path, headers, body.dump(),
                           "application/json");
    if (!res) {
        return BackendReply{0, "", {}};  // transport failure; gateway retries
    }
    if (res->status != 200) {
        return BackendReply{res->status, res->body, {}};
    }

    try {
        auto j = nlohmann::json::parse(res->body);
        BackendReply reply;
        reply.status = 200;
        reply.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
        if (j.contains("usage")) {
            reply.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
            reply.usage.completion_tokens = j["usage"].value("completion_tokens", 0);
        }
        return reply;
    } catch (const nlohmann::json::exception& e) {
        return BackendReply{502, std::string("unparseable provider response: ") + e.what(), {}};
    }
}

}  // namespace pref
