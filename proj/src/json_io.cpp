#include "pref/json_io.hpp"

namespace pref {

using nlohmann::json;

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
    if (value.has_value()) j[key] = *value;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& value) {
    if (j.contains(key) && !j.at(key).is_null()) {
        value = j.at(key).get<T>();
    } else {
        value.reset();
    }
}

}  // namespace

void to_json(json& j, const CandidateAnswer& v) {
    j = json{{"id", v.id}, {"text", v.text}};
}

void from_json(const json& j, CandidateAnswer& v) {
    j.at("id").get_to(v.id);
    j.at("text").get_to(v.text);
}

void to_json(json& j, const EvalInstance& v) {
    j = json{{"id", v.id},
             {"question", v.question},
             {"preference", v.preference},
             {"candidates", v.candidates},
             {"gold_index", v.gold_index}};
    put_optional(j, "explanation", v.explanation);
}

void from_json(const json& j, EvalInstance& v) {
    j.at("id").get_to(v.id);
    j.at("question").get_to(v.question);
    j.at("preference").get_to(v.preference);
    j.at("candidates").get_to(v.candidates);
    j.at("gold_index").get_to(v.gold_index);
    get_optional(j, "explanation", v.explanation);
}

void to_json(json& j, const Factor& v) {
    j = json{{"id", v.id},
             {"name", v.name},
             {"description", v.description},
             {"origin", to_string(v.origin)}};
    put_optional(j, "rubric", v.rubric);
    put_optional(j, "justification", v.justification);
}

void from_json(const json& j, Factor& v) {
    j.at("id").get_to(v.id);
    j.at("name").get_to(v.name);
    j.at("description").get_to(v.description);
    v.origin = factor_origin_from_string(j.at("origin").get<std::string>());
    get_optional(j, "rubric", v.rubric);
    get_optional(j, "justification", v.justification);
}

void to_json(json& j, const ModelRole& v) {
    j = json{{"role", to_string(v.role)},
             {"provider", v.provider},
             {"model_name", v.model_name},
             {"temperature", v.temperature}};
}

void from_json(const json& j, ModelRole& v) {
    v.role = role_from_string(j.at("role").get<std::string>());
    j.at("provider").get_to(v.provider);
    j.at("model_name").get_to(v.model_name);
    j.at("temperature").get_to(v.temperature);
}

void to_json(json& j, const GeneralGuideline& v) {
    j = json{{"query_id", v.query_id}, {"factors", v.factors}, {"producer", v.producer}};
}

void from_json(const json& j, GeneralGuideline& v) {
    j.at("query_id").get_to(v.query_id);
    j.at("factors").get_to(v.factors);
    j.at("producer").get_to(v.producer);
}

void to_json(json& j, const PersonalizedGuideline& v) {
    j = json{{"base", v.base},
             {"ordering", v.ordering},
             {"added", v.added},
             {"producer", v.producer}};
    put_optional(j, "weights", v.weights);
}

void from_json(const json& j, PersonalizedGuideline& v) {
    j.at("base").get_to(v.base);
    j.at("ordering").get_to(v.ordering);
    j.at("added").get_to(v.added);
    j.at("producer").get_to(v.producer);
    get_optional(j, "weights", v.weights);
}

void to_json(json& j, const AnswerScore& v) {
    j = json{{"instance_id", v.instance_id},
             {"candidate_id", v.candidate_id},
             {"value", v.value}};
    put_optional(j, "sub_scores", v.sub_scores);
    put_optional(j, "rationale", v.rationale);
}

void from_json(const json& j, AnswerScore& v) {
    j.at("instance_id").get_to(v.instance_id);
    j.at("candidate_id").get_to(v.candidate_id);
    j.at("value").get_to(v.value);
    get_optional(j, "sub_scores", v.sub_scores);
    get_optional(j, "rationale", v.rationale);
}

}  // namespace pref
