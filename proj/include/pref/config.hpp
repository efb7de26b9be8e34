#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pref/live_backend.hpp"
#include "pref/types.hpp"

namespace pref {

enum class JudgeMode { Pref, PrefNoUp, ZeroShot, Reminder };

std::string to_string(JudgeMode mode);
JudgeMode judge_mode_from_string(const std::string& s);

/// Either a seeded fraction split or an explicit split file.
struct SplitSpec {
    double test_fraction = 0.2;
    std::uint64_t seed = 42;
    std::optional<std::string> split_file;

    bool operator==(const SplitSpec&) const = default;
};

struct BackendSpec {
    BackendKind kind = BackendKind::Mock;
    std::string fixture_path;               // required for mock
    std::vector<ProviderConfig> providers;  // required for live
};

struct TemplateSpec {
    std::string version = "v1";       // builtin set unless dir is given
    std::optional<std::string> dir;   // load from directory instead
};

/// Full run configuration; see docs/config.md for the file schema.
struct RunConfig {
    std::string dataset_path;
    SplitSpec split;
    ModelRole coverage_role{Role::Coverage, "mock", "scripted", 0.0};
    ModelRole preference_role{Role::Preference, "mock", "scripted", 0.0};
    ModelRole scoring_role{Role::Scoring, "mock", "scripted", 0.0};
    BackendSpec backend;
    std::size_t parallelism = 1;
    std::string cache_dir;  // empty = in-memory cache
    JudgeMode judge_mode = JudgeMode::Pref;
    bool oracle_mode = false;
    TemplateSpec templates;
    std::string output_dir;
    int max_tokens = 1024;
};

/// Parses a config document. Strings may reference environment variables as
/// "${NAME}"; unset variables are a ConfigError. Structural problems
/// (unknown judge mode, mock without fixtures, live without providers) are
/// ConfigErrors too.
RunConfig config_from_json(const nlohmann::json& doc);

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

/// The reproducibility-relevant part of the config, embedded in artifacts.
/// Execution-only knobs (parallelism, cache/output directories, fixture
/// location) are deliberately left out so artifacts stay byte-identical
/// across runner layouts.
nlohmann::json config_snapshot(const RunConfig& config);

}  // namespace pref
