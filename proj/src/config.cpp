#include "pref/config.hpp"

#include <cstdlib>
#include <fstream>

#include "pref/errors.hpp"

namespace pref {

using nlohmann::json;

std::string to_string(JudgeMode mode) {
    switch (mode) {
        case JudgeMode::Pref: return "pref";
        case JudgeMode::PrefNoUp: return "pref_no_up";
        case JudgeMode::ZeroShot: return "zero_shot";
        case JudgeMode::Reminder: return "reminder";
    }
    return "pref";
}

JudgeMode judge_mode_from_string(const std::string& s) {
    if (s == "pref") return JudgeMode::Pref;
    if (s == "pref_no_up") return JudgeMode::PrefNoUp;
    if (s == "zero_shot") return JudgeMode::ZeroShot;
    if (s == "reminder") return JudgeMode::Reminder;
    throw ConfigError("unknown judge mode: " + s);
}

namespace {

/// Expands "${NAME}" references against the process environment.
std::string interpolate_env(const std::string& value) {
    std::string out;
    std::size_t pos = 0;
    while (pos < value.size()) {
        const std::size_t open = value.find("${", pos);
        if (open == std::string::npos) {
            out.append(value, pos, std::string::npos);
            break;
        }
        const std::size_t close = value.find('}', open + 2);
        if (close == std::string::npos) {
            out.append(value, pos, std::string::npos);
            break;
        }
        out.append(value, pos, open - pos);
        const std::string name = value.substr(open + 2, close - open - 2);
        const char* resolved = std::getenv(name.c_str());
        if (resolved == nullptr) {
            throw ConfigError("environment variable not set: " + name);
        }
        out += resolved;
        pos = close + 1;
    }
    return out;
}

std::string get_string(const json& j, const char* key, const std::string& fallback = "") {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw ConfigError(std::string("config field must be a string: ") + key);
    return interpolate_env(j[key].get<std::string>());
}

ModelRole read_role(Role role, const json& doc) {
    ModelRole out;
    out.role = role;
    out.provider = get_string(doc, "provider");
    out.model_name = get_string(doc, "model");
    if (doc.contains("temperature")) out.temperature = doc["temperature"].get<double>();
    if (out.provider.empty() || out.model_name.empty()) {
        throw ConfigError("role binding needs provider and model");
    }
    return out;
}

}  // namespace

RunConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    RunConfig config;

    config.dataset_path = get_string(doc, "dataset");
    if (config.dataset_path.empty()) throw ConfigError("config needs a dataset path");

    if (doc.contains("split")) {
        const json& split = doc["split"];
        if (split.contains("file")) {
            config.split.split_file = get_string(split, "file");
        } else {
            if (split.contains("test_fraction")) {
                config.split.test_fraction = split["test_fraction"].get<double>();
            }
            if (split.contains("seed")) config.split.seed = split["seed"].get<std::uint64_t>();
        }
    }

    // One backbone fills all three roles by default; per-role overrides win
    // when present.
    std::optional<json> backbone;
    if (doc.contains("backbone")) backbone = doc["backbone"];
    auto role_doc = [&](const char* name) -> std::optional<json> {
        if (doc.contains("roles") && doc["roles"].contains(name)) return doc["roles"][name];
        return backbone;
    };
    if (auto r = role_doc("coverage")) config.coverage_role = read_role(Role::Coverage, *r);
    if (auto r = role_doc("preference")) config.preference_role = read_role(Role::Preference, *r);
    if (auto r = role_doc("scoring")) config.scoring_role = read_role(Role::Scoring, *r);
    if (!doc.contains("backbone") && !doc.contains("roles")) {
        throw ConfigError("config needs a backbone or per-role bindings");
    }

    if (doc.contains("backend")) {
        const json& backend = doc["backend"];
        const std::string kind = get_string(backend, "kind", "mock");
        if (kind == "mock") {
            config.backend.kind = BackendKind::Mock;
            config.backend.fixture_path = get_string(backend, "fixtures");
        } else if (kind == "live") {
            config.backend.kind = BackendKind::Live;
            if (backend.contains("providers")) {
                for (const auto& p : backend["providers"]) {
                    ProviderConfig provider;
                    provider.name = get_string(p, "name");
                    provider.base_url = get_string(p, "base_url");
                    provider.api_key_env = get_string(p, "api_key_env");
                    if (p.contains("requests_per_minute")) {
                        provider.requests_per_minute = p["requests_per_minute"].get<double>();
                    }
                    if (p.contains("chat_path")) provider.chat_path = get_string(p, "chat_path");
                    if (p.contains("timeout_seconds")) {
                        provider.timeout_seconds = p["timeout_seconds"].get<int>();
                    }
                    config.backend.providers.push_back(std::move(provider));
                }
            }
        } else {
            throw ConfigError("backend kind must be \"mock\" or \"live\", got: " + kind);
        }
    }
    if (config.backend.kind == BackendKind::Mock && config.backend.fixture_path.empty()) {
        throw ConfigError("mock backend requires a fixture path");
    }
    if (config.backend.kind == BackendKind::Live && config.backend.providers.empty()) {
        throw ConfigError("live backend requires at least one provider");
    }

    if (doc.contains("parallelism")) {
        const auto p = doc["parallelism"].get<long long>();
        if (p < 1) throw ConfigError("parallelism must be >= 1");
        config.parallelism = static_cast<std::size_t>(p);
    }
    config.cache_dir = get_string(doc, "cache_dir");
    if (doc.contains("judge_mode")) {
        config.judge_mode = judge_mode_from_string(get_string(doc, "judge_mode"));
    }
    if (doc.contains("oracle_mode")) config.oracle_mode = doc["oracle_mode"].get<bool>();
    if (doc.contains("templates")) {
        const json& t = doc["templates"];
        if (t.contains("dir")) config.templates.dir = get_string(t, "dir");
        if (t.contains("version")) config.templates.version = get_string(t, "version");
    }
    config.output_dir = get_string(doc, "output_dir");
    if (doc.contains("max_tokens")) config.max_tokens = doc["max_tokens"].get<int>();

    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("invalid config JSON: " + std::string(e.what()));
    }
    return config_from_json(doc);
}

json config_snapshot(const RunConfig& config) {
    auto role_json = [](const ModelRole& role) {
        return json{{"provider", role.provider},
                    {"model", role.model_name},
                    {"temperature", role.temperature},
                    {"fingerprint", role.fingerprint()}};
    };
    json split;
    if (config.split.split_file.has_value()) {
        split = json{{"file", *config.split.split_file}};
    } else {
        split = json{{"test_fraction", config.split.test_fraction}, {"seed", config.split.seed}};
    }
    return json{{"dataset", config.dataset_path},
                {"split", std::move(split)},
                {"roles",
                 {{"coverage", role_json(config.coverage_role)},
                  {"preference", role_json(config.preference_role)},
                  {"scoring", role_json(config.scoring_role)}}},
                {"backend", to_string(config.backend.kind)},
                {"judge_mode", to_string(config.judge_mode)},
                {"oracle_mode", config.oracle_mode},
                {"template_version", config.templates.version},
                {"max_tokens", config.max_tokens}};
}

}  // namespace pref
