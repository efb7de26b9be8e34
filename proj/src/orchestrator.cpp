#include "pref/orchestrator.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "pref/errors.hpp"
#include "pref/hash.hpp"
#include "pref/json_io.hpp"
#include "pref/live_backend.hpp"
#include "pref/mock_backend.hpp"
#include "pref/templates.hpp"
#include "pref/worker_pool.hpp"

namespace pref {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct StageFailure {
    std::vector<std::string> issues;
    std::vector<std::string> raw_completions;
};

/// Cache identity of a conditioning text; the augmentation policy is folded
/// in because it changes what a cached g* may legally contain.
std::string profile_hash(const std::string& conditioning, bool allow_augmentation) {
    return content_hash((allow_augmentation ? "aug:" : "noaug:") + conditioning);
}

std::string fmt4(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

std::string metric_cell(const json& row, const char* key) {
    if (!row.contains(key) || row[key].is_null()) return "n/a";
    return fmt4(row[key].get<double>());
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write artifact file: " + path.string());
    out << content;
}

std::string calls_to_text(const std::vector<CallLogEntry>& calls) {
    std::ostringstream out;
    for (const auto& entry : calls) {
        out << entry.request_tag << "\trole=" << to_string(entry.role)
            << "\tbackend=" << to_string(entry.backend) << "\tretries=" << entry.retry_count
            << "\tts=" << entry.timestamp_ms << "\n";
    }
    return out.str();
}

std::vector<CallLogEntry> sorted_calls(const LlmGateway& gateway) {
    auto calls = gateway.call_log().snapshot();
    // Completion order depends on scheduling; tags are unique per run, so
    // sorting by tag makes calls.log byte-stable across parallelism settings.
    std::sort(calls.begin(), calls.end(), [](const CallLogEntry& a, const CallLogEntry& b) {
        return a.request_tag < b.request_tag;
    });
    return calls;
}

}  // namespace

Orchestrator::Orchestrator(RunConfig config)
    : config_(std::move(config)), cache_(config_.cache_dir) {
    if (config_.templates.dir.has_value()) {
        templates_ = load_templates(*config_.templates.dir);
    } else {
        templates_ = builtin_templates();
        if (config_.templates.version != templates_.version) {
            throw ConfigError("unknown builtin template version: " + config_.templates.version);
        }
    }

    if (config_.backend.kind == BackendKind::Mock) {
        auto mock = std::make_shared<MockBackend>();
        mock->load_fixtures(config_.backend.fixture_path);
        gateway_.bind_role(config_.coverage_role, mock);
        gateway_.bind_role(config_.preference_role, mock);
        gateway_.bind_role(config_.scoring_role, mock);
        // Scripted runs must be byte-stable: no wall-clock in the call log.
        gateway_.set_deterministic_clock(true);
    } else {
        std::unordered_map<std::string, std::shared_ptr<LiveBackend>> backends;
        for (const auto& provider : config_.backend.providers) {
            backends[provider.name] = std::make_shared<LiveBackend>(provider);
            if (provider.requests_per_minute > 0) {
                gateway_.set_rate_limit(provider.name, provider.requests_per_minute);
            }
        }
        auto bind = [&](const ModelRole& role) {
            auto it = backends.find(role.provider);
            if (it == backends.end()) {
                throw ConfigError("no provider configured for role binding: " + role.provider);
            }
            gateway_.bind_role(role, it->second);
        };
        bind(config_.coverage_role);
        bind(config_.preference_role);
        bind(config_.scoring_role);
    }
}

Orchestrator::Prepared Orchestrator::prepare() {
    LoadedDataset loaded = load_prefeval(config_.dataset_path);
    manifest_ = loaded.manifest;
    SplitResult parts =
        config_.split.split_file.has_value()
            ? apply_split_file(loaded.instances, *config_.split.split_file)
            : split(loaded.instances, config_.split.test_fraction, config_.split.seed);
    return Prepared{std::move(parts.test)};
}

RunArtifact Orchestrator::run() {
    Prepared prepared = prepare();
    const std::vector<EvalInstance>& test = prepared.test;

    RunArtifact artifact;
    artifact.manifest = manifest_;
    artifact.config = config_snapshot(config_);
    artifact.config["template_version"] = templates_.version;  // resolved version
    artifact.config["dataset_checksum"] = manifest_.checksum;

    Pipeline pipeline(gateway_, templates_, config_.max_tokens);

    std::set<std::string> excluded_ids;
    auto exclude = [&](const EvalInstance& instance, const std::string& stage,
                       const StageFailure& failure) {
        if (!excluded_ids.insert(instance.id).second) return;
        artifact.exclusions.push_back(
            {instance.id, stage, failure.issues, failure.raw_completions});
    };

    const bool needs_coverage =
        config_.judge_mode == JudgeMode::Pref || config_.judge_mode == JudgeMode::PrefNoUp;

    // Phase 1 — coverage. One call per distinct query; a query is identified
    // by the content hash of its question text, so instances sharing a
    // question share one guideline ("a single g can support many users").
    std::unordered_map<std::string, std::size_t> guideline_by_query;
    if (needs_coverage) {
        std::vector<std::string> query_order;
        std::unordered_map<std::string, const EvalInstance*> query_owner;
        for (const auto& instance : test) {
            const std::string qh = content_hash(instance.question);
            if (query_owner.emplace(qh, &instance).second) query_order.push_back(qh);
        }

        struct Slot {
            std::optional<GeneralGuideline> guideline;
            std::optional<StageFailure> failure;
        };
        std::vector<Slot> slots(query_order.size());
        parallel_for(query_order.size(), config_.parallelism, [&](std::size_t i) {
            const std::string& qh = query_order[i];
            const EvalInstance& owner = *query_owner.at(qh);
            const CacheKey key{templates_.version, config_.coverage_role.fingerprint(),
                               "q:" + qh, ""};
            if (auto hit = cache_.get(key)) {
                slots[i].guideline = hit->get<GeneralGuideline>();
                return;
            }
            try {
                auto result = pipeline.generate_guideline(owner);
                cache_.put(key, json(result.value));
                slots[i].guideline = std::move(result.value);
            } catch (const ParseFailure& e) {
                slots[i].failure = StageFailure{e.issues, e.raw_completions};
            }
        });

        std::unordered_map<std::string, StageFailure> failed_queries;
        for (std::size_t i = 0; i < query_order.size(); ++i) {
            if (slots[i].guideline.has_value()) {
                guideline_by_query[query_order[i]] = artifact.guidelines.size();
                artifact.guidelines.push_back(std::move(*slots[i].guideline));
            } else {
                failed_queries[query_order[i]] = std::move(*slots[i].failure);
            }
        }
        for (const auto& instance : test) {
            auto it = failed_queries.find(content_hash(instance.question));
            if (it != failed_queries.end()) exclude(instance, "coverage", it->second);
        }
    }

    // Phase 2 — personalization (mode pref only). One call per distinct
    // (query, preference) pair.
    std::unordered_map<std::string, std::size_t> personalized_by_pair;
    auto pair_key = [](const EvalInstance& instance) {
        return content_hash(instance.question) + "\x1f" + content_hash(instance.preference);
    };
    if (config_.judge_mode == JudgeMode::Pref) {
        std::vector<std::string> pair_order;
        std::unordered_map<std::string, const EvalInstance*> pair_owner;
        for (const auto& instance : test) {
            if (excluded_ids.count(instance.id)) continue;
            if (pair_owner.emplace(pair_key(instance), &instance).second) {
                pair_order.push_back(pair_key(instance));
            }
        }

        struct Slot {
            std::optional<PersonalizedGuideline> personalized;
            std::optional<StageFailure> failure;
        };
        std::vector<Slot> slots(pair_order.size());
        parallel_for(pair_order.size(), config_.parallelism, [&](std::size_t i) {
            const EvalInstance& owner = *pair_owner.at(pair_order[i]);
            const std::string qh = content_hash(owner.question);
            const GeneralGuideline& base = artifact.guidelines[guideline_by_query.at(qh)];
            const CacheKey key{templates_.version, config_.preference_role.fingerprint(),
                               "q:" + qh, profile_hash(owner.preference, true)};
            if (auto hit = cache_.get(key)) {
                slots[i].personalized = hit->get<PersonalizedGuideline>();
                return;
            }
            try {
                auto result = pipeline.personalize(owner, base, owner.preference,
                                                   ConditioningKind::Preference, true);
                cache_.put(key, json(result.value));
                slots[i].personalized = std::move(result.value);
            } catch (const ParseFailure& e) {
                slots[i].failure = StageFailure{e.issues, e.raw_completions};
            }
        });

        std::unordered_map<std::string, StageFailure> failed_pairs;
        for (std::size_t i = 0; i < pair_order.size(); ++i) {
            if (slots[i].personalized.has_value()) {
                personalized_by_pair[pair_order[i]] = artifact.personalized.size();
                artifact.personalized.push_back(std::move(*slots[i].personalized));
            } else {
                failed_pairs[pair_order[i]] = std::move(*slots[i].failure);
            }
        }
        for (const auto& instance : test) {
            if (excluded_ids.count(instance.id)) continue;
            auto it = failed_pairs.find(pair_key(instance));
            if (it != failed_pairs.end()) exclude(instance, "personalization", it->second);
        }
    }

    // Phase 3 — scoring. Guideline modes score candidate-by-candidate;
    // baseline modes issue one vector-scoring call per instance.
    std::vector<const EvalInstance*> to_score;
    for (const auto& instance : test) {
        if (!excluded_ids.count(instance.id)) to_score.push_back(&instance);
    }

    if (needs_coverage) {
        struct Job {
            const EvalInstance* instance;
            std::size_t candidate;
        };
        std::vector<Job> jobs;
        for (const EvalInstance* instance : to_score) {
            for (std::size_t c = 0; c < instance->candidates.size(); ++c) {
                jobs.push_back({instance, c});
            }
        }
        struct Slot {
            std::optional<AnswerScore> score;
            std::optional<StageFailure> failure;
        };
        std::vector<Slot> slots(jobs.size());
        parallel_for(jobs.size(), config_.parallelism, [&](std::size_t i) {
            const EvalInstance& instance = *jobs[i].instance;
            const CandidateAnswer& candidate = instance.candidates[jobs[i].candidate];
            try {
                if (config_.judge_mode == JudgeMode::Pref) {
                    const auto& star =
                        artifact.personalized[personalized_by_pair.at(pair_key(instance))];
                    slots[i].score = pipeline.score_answer(instance, star, candidate).value;
                } else {
                    const auto& base = artifact.guidelines[guideline_by_query.at(
                        content_hash(instance.question))];
                    slots[i].score =
                        pipeline.score_answer_general(instance, base, candidate).value;
                }
            } catch (const ParseFailure& e) {
                slots[i].failure = StageFailure{e.issues, e.raw_completions};
            }
        });

        std::size_t cursor = 0;
        for (const EvalInstance* instance : to_score) {
            const std::size_t n = instance->candidates.size();
            StageFailure merged;
            std::vector<AnswerScore> row_scores;
            for (std::size_t c = 0; c < n; ++c, ++cursor) {
                if (slots[cursor].score.has_value()) {
                    row_scores.push_back(std::move(*slots[cursor].score));
                } else {
                    auto& f = *slots[cursor].failure;
                    merged.issues.insert(merged.issues.end(), f.issues.begin(), f.issues.end());
                    merged.raw_completions.insert(merged.raw_completions.end(),
                                                  f.raw_completions.begin(),
                                                  f.raw_completions.end());
                }
            }
            if (row_scores.size() != n) {
                exclude(*instance, "scoring", merged);
                continue;
            }
            ScoreRow row;
            row.instance_id = instance->id;
            row.gold_index = instance->gold_index;
            for (auto& s : row_scores) row.scores.push_back(s.value);
            artifact.matrix.rows.push_back(std::move(row));
            for (auto& s : row_scores) artifact.scores.push_back(std::move(s));
        }
    } else {
        struct Slot {
            std::optional<std::vector<AnswerScore>> scores;
            std::optional<StageFailure> failure;
        };
        std::vector<Slot> slots(to_score.size());
        const bool reminder = config_.judge_mode == JudgeMode::Reminder;
        parallel_for(to_score.size(), config_.parallelism, [&](std::size_t i) {
            try {
                auto result = reminder ? pipeline.judge_reminder(*to_score[i])
                                       : pipeline.judge_zero_shot(*to_score[i]);
                slots[i].scores = std::move(result.value);
            } catch (const ParseFailure& e) {
                slots[i].failure = StageFailure{e.issues, e.raw_completions};
            }
        });
        for (std::size_t i = 0; i < to_score.size(); ++i) {
            const EvalInstance& instance = *to_score[i];
            if (!slots[i].scores.has_value()) {
                exclude(instance, reminder ? "reminder" : "zero_shot", *slots[i].failure);
                continue;
            }
            ScoreRow row;
            row.instance_id = instance.id;
            row.gold_index = instance.gold_index;
            for (auto& s : *slots[i].scores) row.scores.push_back(s.value);
            artifact.matrix.rows.push_back(std::move(row));
            for (auto& s : *slots[i].scores) artifact.scores.push_back(std::move(s));
        }
    }

    // Metrics document. Call counts are deliberately absent: a warm-cache
    // re-run must produce an identical metric report.
    json row;
    row["mode"] = to_string(config_.judge_mode);
    row["model"] = config_.scoring_role.fingerprint();
    row["n_instances"] = test.size();
    row["n_scored"] = artifact.matrix.rows.size();
    row["n_excluded"] = artifact.exclusions.size();
    if (!artifact.matrix.rows.empty()) {
        row["accuracy"] = accuracy(artifact.matrix);
        row["mse"] = mse(artifact.matrix);
        row["ndcg"] = ndcg(artifact.matrix);
        row["ndcg_global"] = ndcg_global(artifact.matrix);
    } else {
        row["accuracy"] = nullptr;
        row["mse"] = nullptr;
        row["ndcg"] = nullptr;
        row["ndcg_global"] = nullptr;
    }

    json metrics;
    metrics["config"] = artifact.config;
    metrics["dataset"] = manifest_to_json(artifact.manifest);
    metrics["judged"] = json::array({row});
    metrics["n_excluded"] = artifact.exclusions.size();
    metrics["exclusions"] = json::array();
    for (const auto& record : artifact.exclusions) {
        metrics["exclusions"].push_back(exclusion_to_json(record));
    }
    if (!artifact.personalized.empty()) {
        metrics["augmentation"] = augmentation_to_json(augmentation_stats(artifact.personalized));
    }
    artifact.metrics = std::move(metrics);

    artifact.calls = sorted_calls(gateway_);
    return artifact;
}

OracleArtifact Orchestrator::oracle_experiment() {
    if (!config_.oracle_mode) {
        throw ConfigError("oracle_mode must be enabled for the oracle experiment");
    }
    Prepared prepared = prepare();
    const std::vector<EvalInstance>& test = prepared.test;
    if (!manifest_.has_explanations) {
        throw ConfigError("oracle experiment requires explanations on every instance");
    }

    OracleArtifact artifact;
    artifact.manifest = manifest_;
    artifact.config = config_snapshot(config_);
    artifact.config["template_version"] = templates_.version;
    artifact.config["dataset_checksum"] = manifest_.checksum;

    Pipeline pipeline(gateway_, templates_, config_.max_tokens);

    std::set<std::string> excluded_ids;
    auto exclude = [&](const EvalInstance& instance, const std::string& stage,
                       const StageFailure& failure) {
        if (!excluded_ids.insert(instance.id).second) return;
        artifact.exclusions.push_back(
            {instance.id, stage, failure.issues, failure.raw_completions});
    };

    // Phase 1 — coverage, shared with run(): one guideline per distinct query.
    std::unordered_map<std::string, std::size_t> guideline_by_query;
    std::vector<GeneralGuideline> guidelines;
    {
        std::vector<std::string> query_order;
        std::unordered_map<std::string, const EvalInstance*> query_owner;
        for (const auto& instance : test) {
            const std::string qh = content_hash(instance.question);
            if (query_owner.emplace(qh, &instance).second) query_order.push_back(qh);
        }
        struct Slot {
            std::optional<GeneralGuideline> guideline;
            std::optional<StageFailure> failure;
        };
        std::vector<Slot> slots(query_order.size());
        parallel_for(query_order.size(), config_.parallelism, [&](std::size_t i) {
            const EvalInstance& owner = *query_owner.at(query_order[i]);
            const CacheKey key{templates_.version, config_.coverage_role.fingerprint(),
                               "q:" + query_order[i], ""};
            if (auto hit = cache_.get(key)) {
                slots[i].guideline = hit->get<GeneralGuideline>();
                return;
            }
            try {
                auto result = pipeline.generate_guideline(owner);
                cache_.put(key, json(result.value));
                slots[i].guideline = std::move(result.value);
            } catch (const ParseFailure& e) {
                slots[i].failure = StageFailure{e.issues, e.raw_completions};
            }
        });
        std::unordered_map<std::string, StageFailure> failed_queries;
        for (std::size_t i = 0; i < query_order.size(); ++i) {
            if (slots[i].guideline.has_value()) {
                guideline_by_query[query_order[i]] = guidelines.size();
                guidelines.push_back(std::move(*slots[i].guideline));
            } else {
                failed_queries[query_order[i]] = std::move(*slots[i].failure);
            }
        }
        for (const auto& instance : test) {
            auto it = failed_queries.find(content_hash(instance.question));
            if (it != failed_queries.end()) exclude(instance, "coverage", it->second);
        }
    }

    // Phase 2 — personalize twice per instance (π_p then π_e), augmentation
    // disabled so both orderings are permutations of the same factor ids.
    std::vector<const EvalInstance*> active;
    for (const auto& instance : test) {
        if (!excluded_ids.count(instance.id)) active.push_back(&instance);
    }
    struct Slot {
        std::optional<OracleInstanceOrdering> ordering;
        std::optional<StageFailure> failure;
    };
    std::vector<Slot> slots(active.size());
    parallel_for(active.size(), config_.parallelism, [&](std::size_t i) {
        const EvalInstance& instance = *active[i];
        const GeneralGuideline& base =
            guidelines[guideline_by_query.at(content_hash(instance.question))];
        try {
            auto by_preference = pipeline.personalize(instance, base, instance.preference,
                                                      ConditioningKind::Preference, false);
            auto by_explanation = pipeline.personalize(instance, base, *instance.explanation,
                                                       ConditioningKind::Explanation, false);
            slots[i].ordering = OracleInstanceOrdering{instance.id,
                                                       by_preference.value.ordering,
                                                       by_explanation.value.ordering};
        } catch (const ParseFailure& e) {
            slots[i].failure = StageFailure{e.issues, e.raw_completions};
        }
    });

    std::vector<std::pair<RankVector, RankVector>> pairs;
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (slots[i].ordering.has_value()) {
            artifact.orderings.push_back(std::move(*slots[i].ordering));
        } else {
            exclude(*active[i], "personalization", *slots[i].failure);
        }
    }
    for (const auto& ordering : artifact.orderings) {
        pairs.push_back({RankVector{ordering.preference_ordering},
                         RankVector{ordering.explanation_ordering}});
    }
    artifact.correlation = rank_correlation_report(pairs);

    json metrics;
    metrics["config"] = artifact.config;
    metrics["dataset"] = manifest_to_json(artifact.manifest);
    metrics["correlation"] = correlation_to_json(artifact.correlation);
    metrics["n_excluded"] = artifact.exclusions.size();
    metrics["exclusions"] = json::array();
    for (const auto& record : artifact.exclusions) {
        metrics["exclusions"].push_back(exclusion_to_json(record));
    }
    artifact.metrics = std::move(metrics);

    artifact.calls = sorted_calls(gateway_);
    return artifact;
}

json exclusion_to_json(const ExclusionRecord& record) {
    return json{{"instance_id", record.instance_id},
                {"stage", record.stage},
                {"issues", record.issues},
                {"raw_completions", record.raw_completions}};
}

json correlation_to_json(const RankCorrelationReport& report) {
    return json{{"pearson", report.pearson},
                {"spearman", report.spearman},
                {"kendall", report.kendall},
                {"n_pairs", report.n_pairs},
                {"n_excluded", report.n_excluded}};
}

json augmentation_to_json(const AugmentationStats& stats) {
    return json{{"n_general", stats.n_general},
                {"n_added", stats.n_added},
                {"added_ratio", stats.added_ratio},
                {"per_question_general", stats.per_question_general},
                {"per_question_added", stats.per_question_added},
                {"exclusion_rate_general", stats.exclusion_rate_general},
                {"exclusion_rate_added", stats.exclusion_rate_added}};
}

std::string render_report_markdown(const json& doc) {
    std::ostringstream out;
    out << "# Evaluation report\n\n";

    if (doc.contains("config")) {
        const json& config = doc["config"];
        out << "- judge mode: " << config.value("judge_mode", std::string("-")) << "\n";
        out << "- backend: " << config.value("backend", std::string("-")) << "\n";
        out << "- template version: " << config.value("template_version", std::string("-"))
            << "\n";
    }
    if (doc.contains("dataset")) {
        const json& dataset = doc["dataset"];
        out << "- dataset: " << dataset.value("source_path", std::string("-")) << " ("
            << dataset.value("n_instances", 0) << " instances, checksum "
            << dataset.value("checksum", std::string("-")) << ")\n";
    }
    out << "\n";

    if (doc.contains("judged")) {
        out << "## Scores\n\n";
        out << "| mode | model | accuracy | mse | ndcg | ndcg_global | n_scored | n_excluded "
               "|\n";
        out << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& row : doc["judged"]) {
            out << "| " << row.value("mode", std::string("-")) << " | "
                << row.value("model", std::string("-")) << " | " << metric_cell(row, "accuracy")
                << " | " << metric_cell(row, "mse") << " | " << metric_cell(row, "ndcg") << " | "
                << metric_cell(row, "ndcg_global") << " | " << row.value("n_scored", 0) << " | "
                << row.value("n_excluded", 0) << " |\n";
        }
        out << "\n";
    }

    if (doc.contains("correlation")) {
        const json& c = doc["correlation"];
        out << "## Rank correlation (preference vs explanation orderings)\n\n";
        out << "| pearson | spearman | kendall | n_pairs | n_excluded |\n";
        out << "|---|---|---|---|---|\n";
        out << "| " << metric_cell(c, "pearson") << " | " << metric_cell(c, "spearman") << " | "
            << metric_cell(c, "kendall") << " | " << c.value("n_pairs", 0) << " | "
            << c.value("n_excluded", 0) << " |\n\n";
    }

    if (doc.contains("augmentation")) {
        const json& a = doc["augmentation"];
        out << "## Augmentation\n\n";
        out << "| n_general | n_added | added_ratio | per_question_general | per_question_added "
               "| keyword_rate_general | keyword_rate_added |\n";
        out << "|---|---|---|---|---|---|---|\n";
        out << "| " << a.value("n_general", 0) << " | " << a.value("n_added", 0) << " | "
            << metric_cell(a, "added_ratio") << " | " << metric_cell(a, "per_question_general")
            << " | " << metric_cell(a, "per_question_added") << " | "
            << metric_cell(a, "exclusion_rate_general") << " | "
            << metric_cell(a, "exclusion_rate_added") << " |\n\n";
    }

    out << "## Exclusions\n\n";
    out << "n_excluded: " << doc.value("n_excluded", 0) << "\n";
    if (doc.contains("exclusions")) {
        for (const auto& record : doc["exclusions"]) {
            out << "- " << record.value("instance_id", std::string("-")) << " ("
                << record.value("stage", std::string("-")) << ")\n";
        }
    }
    return out.str();
}

namespace {

std::string jsonl_of(const std::vector<GeneralGuideline>& items) {
    std::ostringstream out;
    for (const auto& item : items) out << json(item).dump() << "\n";
    return out.str();
}

std::string jsonl_of(const std::vector<PersonalizedGuideline>& items) {
    std::ostringstream out;
    for (const auto& item : items) out << json(item).dump() << "\n";
    return out.str();
}

std::string jsonl_of(const std::vector<AnswerScore>& items) {
    std::ostringstream out;
    for (const auto& item : items) out << json(item).dump() << "\n";
    return out.str();
}

}  // namespace

void write_run_artifact(const RunArtifact& artifact, const std::string& output_dir) {
    const fs::path dir(output_dir);
    fs::create_directories(dir);
    write_text_file(dir / "guidelines.jsonl", jsonl_of(artifact.guidelines));
    write_text_file(dir / "personalized.jsonl", jsonl_of(artifact.personalized));
    write_text_file(dir / "scores.jsonl", jsonl_of(artifact.scores));
    write_text_file(dir / "metrics.json", artifact.metrics.dump(2) + "\n");
    write_text_file(dir / "report.md", render_report_markdown(artifact.metrics));
    write_text_file(dir / "calls.log", calls_to_text(artifact.calls));
}

void write_oracle_artifact(const OracleArtifact& artifact, const std::string& output_dir) {
    const fs::path dir(output_dir);
    fs::create_directories(dir);
    std::ostringstream orderings;
    for (const auto& record : artifact.orderings) {
        orderings << json{{"instance_id", record.instance_id},
                          {"preference_ordering", record.preference_ordering},
                          {"explanation_ordering", record.explanation_ordering}}
                         .dump()
                  << "\n";
    }
    write_text_file(dir / "orderings.jsonl", orderings.str());
    write_text_file(dir / "metrics.json", artifact.metrics.dump(2) + "\n");
    write_text_file(dir / "report.md", render_report_markdown(artifact.metrics));
    write_text_file(dir / "calls.log", calls_to_text(artifact.calls));
}

std::vector<PersonalizedGuideline> read_personalized_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open personalized guidelines file: " + path);
    std::vector<PersonalizedGuideline> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(json::parse(line).get<PersonalizedGuideline>());
        } catch (const json::exception& e) {
            throw DatasetParseError(line_no, std::string("bad personalized record: ") + e.what());
        }
    }
    return out;
}

}  // namespace pref
