#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pref/gateway.hpp"
#include "pref/structured.hpp"
#include "pref/templates.hpp"
#include "pref/types.hpp"
#include "pref/validation.hpp"

namespace pref {

/// Selects the request tag used for the preference stage, so that the normal
/// and oracle conditioning paths can be scripted independently while sharing
/// one code path and one set of validators.
enum class ConditioningKind { Preference, Explanation };

/// Outcome of one guarded stage call: the parsed artifact plus its parse
/// report and the raw completions (for post-mortems of failed instances).
template <typename T>
struct StageResult {
    T value;
    ParseReport report;
};

/// The three-stage scoring pipeline plus the baseline judges. Stateless
/// apart from the gateway and template references; all methods are
/// reentrant and safe to call concurrently for distinct instances.
class Pipeline {
public:
    Pipeline(LlmGateway& gateway, PromptTemplateSet templates, int max_tokens = 1024);

    /// Stage 1: query-specific guideline g, preference-agnostic by
    /// construction (the rendered prompt contains only the question).
    /// Factor ids are assigned sequentially: F1, F2, ...
    StageResult<GeneralGuideline> generate_guideline(const EvalInstance& instance);

    /// Stage 2: re-rank (and optionally augment) g under `conditioning`,
    /// which is the user preference in normal runs and the gold explanation
    /// in oracle runs. Validated by validate_personalization before return;
    /// one repair round, then PermutationViolation / ParseFailure.
    StageResult<PersonalizedGuideline> personalize(const EvalInstance& instance,
                                                   const GeneralGuideline& guideline,
                                                   const std::string& conditioning,
                                                   ConditioningKind kind = ConditioningKind::Preference,
                                                   bool allow_augmentation = true);

    /// Stage 3: scores one candidate against g* in the context of (q, p).
    StageResult<AnswerScore> score_answer(const EvalInstance& instance,
                                          const PersonalizedGuideline& guideline_star,
                                          const CandidateAnswer& answer);

    /// Ablation: scores against the general guideline only; the prompt
    /// contains q, g and a but not the user preference.
    StageResult<AnswerScore> score_answer_general(const EvalInstance& instance,
                                                  const GeneralGuideline& guideline,
                                                  const CandidateAnswer& answer);

    /// Baseline: one prompt with all candidates, no rubric, no preference.
    StageResult<std::vector<AnswerScore>> judge_zero_shot(const EvalInstance& instance);

    /// Baseline: as zero-shot plus a one-sentence instruction to consider the
    /// user's stated preference, with the preference quoted verbatim.
    StageResult<std::vector<AnswerScore>> judge_reminder(const EvalInstance& instance);

    const PromptTemplateSet& templates() const { return templates_; }
    LlmGateway& gateway() { return gateway_; }

private:
    struct Guarded {
        nlohmann::json value;
        ParseReport report;
        std::vector<std::string> raw_completions;
    };

    /// complete -> parse -> (optional semantic check) with exactly one repair
    /// re-prompt on failure. Throws nothing; callers inspect the report.
    Guarded request_structured(
        const PromptRequest& request, const StructuredSchema& schema,
        const std::function<std::vector<std::string>(const nlohmann::json&)>& semantic_check = {});

    PromptRequest make_request(Role role, std::string system, std::string user,
                               std::string tag) const;

    LlmGateway& gateway_;
    PromptTemplateSet templates_;
    int max_tokens_;
};

}  // namespace pref
