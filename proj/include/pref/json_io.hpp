#pragma once

// Canonical JSON schemas for all core types. Field names are snake_case and
// stable; these encodings are shared by the dataset loader, the on-disk cache,
// and every emitted artifact. Optional fields are omitted when absent so that
// decode(encode(x)) == x field for field.

#include <nlohmann/json.hpp>

#include "pref/types.hpp"

namespace pref {

void to_json(nlohmann::json& j, const CandidateAnswer& v);
void from_json(const nlohmann::json& j, CandidateAnswer& v);

void to_json(nlohmann::json& j, const EvalInstance& v);
void from_json(const nlohmann::json& j, EvalInstance& v);

void to_json(nlohmann::json& j, const Factor& v);
void from_json(const nlohmann::json& j, Factor& v);

void to_json(nlohmann::json& j, const ModelRole& v);
void from_json(const nlohmann::json& j, ModelRole& v);

void to_json(nlohmann::json& j, const GeneralGuideline& v);
void from_json(const nlohmann::json& j, GeneralGuideline& v);

void to_json(nlohmann::json& j, const PersonalizedGuideline& v);
void from_json(const nlohmann::json& j, PersonalizedGuideline& v);

void to_json(nlohmann::json& j, const AnswerScore& v);
void from_json(const nlohmann::json& j, AnswerScore& v);

}  // namespace pref
