#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pref/types.hpp"

namespace pref {

/// User-prompt templates for every judge mode. Slots use {name} syntax with a
/// fixed vocabulary: {question}, {preference}, {guideline}, {answer},
/// {candidates}, {augmentation_policy}. Any other braced text passes through
/// verbatim, so JSON examples inside templates are safe.
struct PromptTemplateSet {
    std::string coverage_template;
    std::string preference_template;
    std::string scoring_template;
    std::string scoring_general_template;
    std::string zero_shot_template;
    std::string reminder_template;
    std::string version;
};

/// Slot names the renderer recognizes.
const std::vector<std::string>& known_slots();

/// Substitutes {slot} occurrences from `slots`. A recognized slot that is
/// referenced but not provided is an error (TemplateError naming it).
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& slots);

/// The compiled-in template set, version "v1". Identical to templates/v1/.
PromptTemplateSet builtin_templates();

/// Loads <dir>/{coverage,preference,scoring,scoring_general,zero_shot,reminder}.txt.
/// The version is the directory name unless a VERSION file overrides it.
PromptTemplateSet load_templates(const std::filesystem::path& dir);

/// Renders a factor list the way prompts embed it: one numbered line per
/// factor with its stable id, name, description, optional weight and rubric.
std::string render_guideline_block(const std::vector<Factor>& factors,
                                   const std::map<std::string, double>* weights = nullptr);

/// Renders candidates as a numbered list, in candidate order.
std::string render_candidates_block(const std::vector<CandidateAnswer>& candidates);

}  // namespace pref
