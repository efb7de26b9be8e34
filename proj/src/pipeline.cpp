#include "pref/pipeline.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>

#include "pref/errors.hpp"

namespace pref {

using nlohmann::json;

namespace {

constexpr const char* kCoverageSystem =
    "You design evaluation guidelines for answers to user questions. "
    "Reply with a single fenced JSON block following the requested schema.";

constexpr const char* kPreferenceSystem =
    "You adapt evaluation guidelines to one specific user. "
    "Reply with a single fenced JSON block following the requested schema.";

constexpr const char* kScoringSystem =
    "You are a strict evaluation judge. "
    "Reply with a single fenced JSON block following the requested schema.";

constexpr const char* kAllowAugmentation =
    "If the guideline misses a criterion this user clearly needs, add it as a new factor with a "
    "justification; additions must not contradict the given factors.";

constexpr const char* kForbidAugmentation =
    "Do not add any new factors; only re-rank the given ones.";

std::string repair_user_prompt(const std::string& original_user, const std::string& previous_reply,
                               const std::vector<std::string>& issues) {
    return original_user + "\n\nYour previous reply was:\n" + previous_reply +
           "\n\nIt failed validation: " + detail::join_issues(issues) +
           "\nReply again with exactly one fenced JSON block that fixes these issues.";
}

bool issues_mention(const std::vector<std::string>& issues,
                    std::initializer_list<const char*> needles) {
    for (const auto& issue : issues) {
        for (const char* needle : needles) {
            if (issue.find(needle) != std::string::npos) return true;
        }
    }
    return false;
}

/// Assembles a PersonalizedGuideline from a schema-normalized ordering value.
/// Added factors without an explicit id get "A1", "A2", ... in list order;
/// a missing ordering is derived from the weights, descending, with the
/// original factor order as tie-break.
PersonalizedGuideline build_personalized(const json& normalized, const GeneralGuideline& base,
                                         const ModelRole& producer) {
    PersonalizedGuideline out;
    out.base = base;
    out.producer = producer;

    std::size_t auto_id = 0;
    for (const auto& item : normalized.at("added")) {
        Factor f;
        ++auto_id;
        f.id = item.contains("id") ? item["id"].get<std::string>()
                                   : "A" + std::to_string(auto_id);
        f.name = item["name"].get<std::string>();
        f.description = item["description"].get<std::string>();
        f.origin = FactorOrigin::Augmented;
        const std::string justification = item["justification"].get<std::string>();
        if (!justification.empty()) f.justification = justification;
        if (item.contains("rubric")) f.rubric = item["rubric"].get<std::string>();
        out.added.push_back(std::move(f));
    }

    if (normalized.contains("weights")) {
        std::map<std::string, double> weights;
        for (const auto& [key, value] : normalized["weights"].items()) {
            weights[key] = value.get<double>();
        }
        out.weights = std::move(weights);
    }

    if (normalized.contains("ordering")) {
        for (const auto& id : normalized["ordering"]) {
            out.ordering.push_back(id.get<std::string>());
        }
    } else {
        std::vector<std::string> ids = base.factor_ids();
        for (const auto& f : out.added) ids.push_back(f.id);
        const auto& weights = *out.weights;
        std::stable_sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
            const double wa = weights.count(a) ? weights.at(a) : 0.0;
            const double wb = weights.count(b) ? weights.at(b) : 0.0;
            return wa > wb;
        });
        out.ordering = std::move(ids);
    }
    return out;
}

}  // namespace

Pipeline::Pipeline(LlmGateway& gateway, PromptTemplateSet templates, int max_tokens)
    : gateway_(gateway), templates_(std::move(templates)), max_tokens_(max_tokens) {}

PromptRequest Pipeline::make_request(Role role, std::string system, std::string user,
                                     std::string tag) const {
    PromptRequest request;
    request.role_binding = gateway_.bound_role(role);
    request.system = std::move(system);
    request.user = std::move(user);
    request.max_tokens = max_tokens_;
    request.request_tag = std::move(tag);
    return request;
}

Pipeline::Guarded Pipeline::request_structured(
    const PromptRequest& request, const StructuredSchema& schema,
    const std::function<std::vector<std::string>(const json&)>& semantic_check) {
    Guarded out;

    auto attempt_once = [&](const PromptRequest& req) -> std::pair<bool, std::vector<std::string>> {
        Completion completion = gateway_.complete(req);
        out.raw_completions.push_back(completion.text);
        ParseAttempt attempt = parse_structured(completion.text, schema);
        std::vector<std::string> issues = attempt.issues;
        if (attempt.ok()) {
            if (semantic_check) {
                auto semantic = semantic_check(*attempt.value);
                issues.insert(issues.end(), semantic.begin(), semantic.end());
                if (!semantic.empty()) return {false, issues};
            }
            out.value = std::move(*attempt.value);
            return {true, issues};
        }
        return {false, issues};
    };

    auto [ok, issues] = attempt_once(request);
    out.report.issues = issues;
    if (ok) {
        out.report.status = ParseStatus::Ok;
        return out;
    }

    // Exactly one repair round-trip: re-prompt with the validation error.
    PromptRequest repair = request;
    repair.request_tag = request.request_tag + "/repair";
    repair.user = repair_user_prompt(request.user, out.raw_completions.back(), issues);

    auto [repaired, repair_issues] = attempt_once(repair);
    out.report.issues.insert(out.report.issues.end(), repair_issues.begin(), repair_issues.end());
    out.report.status = repaired ? ParseStatus::Repaired : ParseStatus::Failed;
    return out;
}

StageResult<GeneralGuideline> Pipeline::generate_guideline(const EvalInstance& instance) {
    const std::string user =
        render_template(templates_.coverage_template, {{"question", instance.question}});
    const auto request =
        make_request(Role::Coverage, kCoverageSystem, user, instance.id + "/coverage");

    Guarded guarded = request_structured(request, GuidelineSchema{});
    if (guarded.report.status == ParseStatus::Failed) {
        throw ParseFailure("coverage", guarded.report.issues, guarded.raw_completions);
    }

    GeneralGuideline guideline;
    guideline.query_id = instance.id;
    guideline.producer = gateway_.bound_role(Role::Coverage);
    std::size_t i = 0;
    for (const auto& item : guarded.value.at("factors")) {
        Factor f;
        f.id = "F" + std::to_string(++i);
        f.name = item["name"].get<std::string>();
        f.description = item["description"].get<std::string>();
        if (item.contains("rubric")) f.rubric = item["rubric"].get<std::string>();
        f.origin = FactorOrigin::Coverage;
        guideline.factors.push_back(std::move(f));
    }
    return {std::move(guideline), guarded.report};
}

StageResult<PersonalizedGuideline> Pipeline::personalize(const EvalInstance& instance,
                                                         const GeneralGuideline& guideline,
                                                         const std::string& conditioning,
                                                         ConditioningKind kind,
                                                         bool allow_augmentation) {
    const std::string user = render_template(
        templates_.preference_template,
        {{"question", instance.question},
         {"preference", conditioning},
         {"guideline", render_guideline_block(guideline.factors)},
         {"augmentation_policy",
          allow_augmentation ? kAllowAugmentation : kForbidAugmentation}});
    const std::string tag =
        instance.id + (kind == ConditioningKind::Preference ? "/preference" : "/preference_oracle");
    const auto request = make_request(Role::Preference, kPreferenceSystem, user, tag);

    const ModelRole producer = gateway_.bound_role(Role::Preference);
    auto semantic = [&](const json& normalized) {
        return validate_personalization(guideline,
                                        build_personalized(normalized, guideline, producer))
            .violations;
    };

    Guarded guarded =
        request_structured(request, OrderingSchema{allow_augmentation}, semantic);
    if (guarded.report.status == ParseStatus::Failed) {
        if (issues_mention(guarded.report.issues,
                           {"missing factor id", "duplicated factor id", "unknown factor id",
                            "added factor", "augmented factor", "weight"})) {
            throw PermutationViolation(guarded.report.issues, guarded.raw_completions);
        }
        throw ParseFailure("personalization", guarded.report.issues, guarded.raw_completions);
    }
    return {build_personalized(guarded.value, guideline, producer), guarded.report};
}

StageResult<AnswerScore> Pipeline::score_answer(const EvalInstance& instance,
                                                const PersonalizedGuideline& guideline_star,
                                                const CandidateAnswer& answer) {
    const auto factors = guideline_star.ordered_factors();
    const std::map<std::string, double>* weights =
        guideline_star.weights.has_value() ? &*guideline_star.weights : nullptr;
    const std::string user = render_template(
        templates_.scoring_template, {{"question", instance.question},
                                      {"preference", instance.preference},
                                      {"guideline", render_guideline_block(factors, weights)},
                                      {"answer", answer.text}});
    const auto request = make_request(Role::Scoring, kScoringSystem, user,
                                      instance.id + "/scoring/" + answer.id);

    std::set<std::string> known_ids(guideline_star.ordering.begin(),
                                    guideline_star.ordering.end());
    auto semantic = [&](const json& normalized) {
        std::vector<std::string> issues;
        if (normalized.contains("sub_scores")) {
            for (const auto& [key, _] : normalized["sub_scores"].items()) {
                if (known_ids.count(key) == 0) {
                    issues.push_back("sub_score for unknown factor id: " + key);
                }
            }
        }
        return issues;
    };

    Guarded guarded = request_structured(request, ScoreSchema{}, semantic);
    if (guarded.report.status == ParseStatus::Failed) {
        if (issues_mention(guarded.report.issues, {"outside [0, 10]"})) {
            throw RangeViolation(guarded.report.issues, guarded.raw_completions);
        }
        throw ParseFailure("scoring", guarded.report.issues, guarded.raw_completions);
    }

    AnswerScore score;
    score.instance_id = instance.id;
    score.candidate_id = answer.id;
    score.value = guarded.value.at("score").get<double>();
    if (guarded.value.contains("sub_scores")) {
        std::map<std::string, double> subs;
        for (const auto& [key, value] : guarded.value["sub_scores"].items()) {
            subs[key] = value.get<double>();
        }
        score.sub_scores = std::move(subs);
    }
    if (guarded.value.contains("rationale")) {
        score.rationale = guarded.value["rationale"].get<std::string>();
    }
    return {std::move(score), guarded.report};
}

StageResult<AnswerScore> Pipeline::score_answer_general(const EvalInstance& instance,
                                                        const GeneralGuideline& guideline,
                                                        const CandidateAnswer& answer) {
    const std::string user = render_template(
        templates_.scoring_general_template,
        {{"question", instance.question},
         {"guideline", render_guideline_block(guideline.factors)},
         {"answer", answer.text}});
    const auto request = make_request(Role::Scoring, kScoringSystem, user,
                                      instance.id + "/scoring_general/" + answer.id);

    Guarded guarded = request_structured(request, ScoreSchema{});
    if (guarded.report.status == ParseStatus::Failed) {
        if (issues_mention(guarded.report.issues, {"outside [0, 10]"})) {
            throw RangeViolation(guarded.report.issues, guarded.raw_completions);
        }
        throw ParseFailure("scoring", guarded.report.issues, guarded.raw_completions);
    }

    AnswerScore score;
    score.instance_id = instance.id;
    score.candidate_id = answer.id;
    score.value = guarded.value.at("score").get<double>();
    if (guarded.value.contains("sub_scores")) {
        std::map<std::string, double> subs;
        for (const auto& [key, value] : guarded.value["sub_scores"].items()) {
            subs[key] = value.get<double>();
        }
        score.sub_scores = std::move(subs);
    }
    if (guarded.value.contains("rationale")) {
        score.rationale = guarded.value["rationale"].get<std::string>();
    }
    return {std::move(score), guarded.report};
}

StageResult<std::vector<AnswerScore>> Pipeline::judge_zero_shot(const EvalInstance& instance) {
    const std::string user = render_template(
        templates_.zero_shot_template,
        {{"question", instance.question},
         {"candidates", render_candidates_block(instance.candidates)}});
    const auto request =
        make_request(Role::Scoring, kScoringSystem, user, instance.id + "/zero_shot");

    Guarded guarded =
        request_structured(request, ScoreVectorSchema{instance.candidates.size()});
    if (guarded.report.status == ParseStatus::Failed) {
        throw ParseFailure("zero_shot", guarded.report.issues, guarded.raw_completions);
    }

    std::vector<AnswerScore> scores;
    const auto& values = guarded.value.at("scores");
    for (std::size_t i = 0; i < values.size(); ++i) {
        AnswerScore s;
        s.instance_id = instance.id;
        s.candidate_id = instance.candidates[i].id;
        s.value = values[i].get<double>();
        scores.push_back(std::move(s));
    }
    return {std::move(scores), guarded.report};
}

StageResult<std::vector<AnswerScore>> Pipeline::judge_reminder(const EvalInstance& instance) {
    const std::string user = render_template(
        templates_.reminder_template,
        {{"question", instance.question},
         {"preference", instance.preference},
         {"candidates", render_candidates_block(instance.candidates)}});
    const auto request =
        make_request(Role::Scoring, kScoringSystem, user, instance.id + "/reminder");

    Guarded guarded =
        request_structured(request, ScoreVectorSchema{instance.candidates.size()});
    if (guarded.report.status == ParseStatus::Failed) {
        throw ParseFailure("reminder", guarded.report.issues, guarded.raw_completions);
    }

    std::vector<AnswerScore> scores;
    const auto& values = guarded.value.at("scores");
    for (std::size_t i = 0; i < values.size(); ++i) {
        AnswerScore s;
        s.instance_id = instance.id;
        s.candidate_id = instance.candidates[i].id;
        s.value = values[i].get<double>();
        scores.push_back(std::move(s));
    }
    return {std::move(scores), guarded.report};
}

}  // namespace pref
