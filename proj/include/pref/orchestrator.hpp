#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pref/cache.hpp"
#include "pref/config.hpp"
#include "pref/dataset.hpp"
#include "pref/gateway.hpp"
#include "pref/metrics.hpp"
#include "pref/pipeline.hpp"

namespace pref {

/// An instance dropped from metrics, kept with its raw completions so failed
/// runs can be diagnosed without re-querying the backend.
struct ExclusionRecord {
    std::string instance_id;
    std::string stage;  // coverage | personalization | scoring | zero_shot | reminder
    std::vector<std::string> issues;
    std::vector<std::string> raw_completions;
};

/// Everything a run produces. The JSONL vectors are written in deterministic
/// order (test-split order; candidate order within an instance).
struct RunArtifact {
    nlohmann::json config;  // reproducibility snapshot, see config_snapshot()
    DatasetManifest manifest;
    std::vector<GeneralGuideline> guidelines;        // one per distinct query
    std::vector<PersonalizedGuideline> personalized; // one per distinct (query, profile)
    std::vector<AnswerScore> scores;
    ScoreMatrix matrix;  // scored (non-excluded) instances only
    std::vector<ExclusionRecord> exclusions;
    nlohmann::json metrics;  // full metrics document (also written as metrics.json)
    std::vector<CallLogEntry> calls;  // sorted by request tag
};

struct OracleInstanceOrdering {
    std::string instance_id;
    std::vector<std::string> preference_ordering;
    std::vector<std::string> explanation_ordering;
};

/// Output of the explanation-oracle correlation experiment.
struct OracleArtifact {
    nlohmann::json config;
    DatasetManifest manifest;
    RankCorrelationReport correlation;
    std::vector<OracleInstanceOrdering> orderings;
    std::vector<ExclusionRecord> exclusions;
    nlohmann::json metrics;
    std::vector<CallLogEntry> calls;
};

/// Drives a full experiment from a RunConfig: dataset load + split, backend
/// wiring, phase scheduling over a bounded worker pool, guideline caching,
/// metric computation, and artifact assembly.
class Orchestrator {
public:
    explicit Orchestrator(RunConfig config);

    /// Executes the configured judge mode over the test split.
    RunArtifact run();

    /// Runs personalize twice per test instance (conditioning = preference,
    /// then = explanation) with augmentation disabled and correlates the
    /// factor orderings. Requires a dataset with explanations.
    OracleArtifact oracle_experiment();

    LlmGateway& gateway() { return gateway_; }
    const RunConfig& config() const { return config_; }
    CacheStats cache_stats() const { return cache_.stats(); }

private:
    struct Prepared {
        std::vector<EvalInstance> test;
    };

    Prepared prepare();

    RunConfig config_;
    DatasetManifest manifest_;
    LlmGateway gateway_;
    ResponseCache cache_;
    PromptTemplateSet templates_;
};

/// Writes guidelines.jsonl, personalized.jsonl, scores.jsonl, metrics.json,
/// report.md and calls.log under `output_dir` (created if needed). Content is
/// byte-stable for identical artifacts.
void write_run_artifact(const RunArtifact& artifact, const std::string& output_dir);

/// Oracle variant: orderings.jsonl instead of the guideline/score files.
void write_oracle_artifact(const OracleArtifact& artifact, const std::string& output_dir);

/// Renders the markdown report for a metrics document (the metrics.json
/// content). Every numeric cell is printed with four decimals and agrees
/// with the JSON values.
std::string render_report_markdown(const nlohmann::json& metrics_doc);

nlohmann::json exclusion_to_json(const ExclusionRecord& record);
nlohmann::json correlation_to_json(const RankCorrelationReport& report);
nlohmann::json augmentation_to_json(const AugmentationStats& stats);

/// Reads back a personalized.jsonl written by write_run_artifact.
std::vector<PersonalizedGuideline> read_personalized_jsonl(const std::string& path);

}  // namespace pref
