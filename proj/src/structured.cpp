#include "pref/structured.hpp"

#include <cctype>
#include <cstdio>

namespace pref {

using nlohmann::json;

std::string to_string(ParseStatus status) {
    switch (status) {
        case ParseStatus::Ok: return "ok";
        case ParseStatus::Repaired: return "repaired";
        case ParseStatus::Failed: return "failed";
    }
    return "unknown";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void check_score_range(const json& v, const std::string& label,
                       std::vector<std::string>& issues) {
    const double value = v.get<double>();
    if (value < 0.0 || value > 10.0) {
        issues.push_back(label + " " + format_number(value) + " outside [0, 10]");
    }
}

json validate_guideline(const json& j, std::vector<std::string>& issues) {
    const json* factors = nullptr;
    if (j.is_array()) {
        factors = &j;
    } else if (j.is_object() && j.contains("factors") && j["factors"].is_array()) {
        factors = &j["factors"];
    } else {
        issues.push_back("guideline must be a JSON array of factors");
        return {};
    }
    if (factors->empty()) {
        issues.push_back("guideline factor list is empty");
        return {};
    }
    json normalized = json::array();
    for (std::size_t i = 0; i < factors->size(); ++i) {
        const auto& item = (*factors)[i];
        if (!item.is_object() || !item.contains("name") || !item["name"].is_string() ||
            item["name"].get<std::string>().empty()) {
            issues.push_back("factor " + std::to_string(i + 1) + " missing a non-empty name");
            continue;
        }
        json f{{"name", item["name"]}};
        f["description"] =
            item.contains("description") && item["description"].is_string() ? item["description"] : "";
        if (item.contains("rubric") && item["rubric"].is_string() &&
            !item["rubric"].get<std::string>().empty()) {
            f["rubric"] = item["rubric"];
        }
        normalized.push_back(std::move(f));
    }
    if (!issues.empty()) return {};
    return json{{"factors", normalized}};
}

json validate_ordering(const json& j, const OrderingSchema& schema,
                       std::vector<std::string>& issues) {
    if (!j.is_object()) {
        issues.push_back("ordering output must be a JSON object");
        return {};
    }
    json normalized = json::object();

    const bool has_ordering = j.contains("ordering");
    const bool has_weights = j.contains("weights") && !j["weights"].is_null();
    if (!has_ordering && !has_weights) {
        issues.push_back("missing \"ordering\" (or a \"weights\" map to derive it from)");
        return {};
    }
    if (has_ordering) {
        if (!j["ordering"].is_array()) {
            issues.push_back("\"ordering\" must be an array of factor ids");
        } else {
            json ordering = json::array();
            for (const auto& id : j["ordering"]) {
                if (!id.is_string()) {
                    issues.push_back("ordering entries must be strings");
                    break;
                }
                ordering.push_back(id);
            }
            normalized["ordering"] = std::move(ordering);
        }
    }
    if (has_weights) {
        if (!j["weights"].is_object()) {
            issues.push_back("\"weights\" must be an object mapping factor id to number");
        } else {
            json weights = json::object();
            for (const auto& [key, value] : j["weights"].items()) {
                if (!value.is_number()) {
                    issues.push_back("weight for " + key + " is not a number");
                    continue;
                }
                weights[key] = value;
            }
            normalized["weights"] = std::move(weights);
        }
    }

    json added = json::array();
    if (j.contains("added") && !j["added"].is_null()) {
        if (!j["added"].is_array()) {
            issues.push_back("\"added\" must be an array of factor objects");
        } else {
            for (std::size_t i = 0; i < j["added"].size(); ++i) {
                const auto& item = j["added"][i];
                if (!item.is_object() || !item.contains("name") || !item["name"].is_string() ||
                    item["name"].get<std::string>().empty()) {
                    issues.push_back("added factor " + std::to_string(i + 1) +
                                     " missing a non-empty name");
                    continue;
                }
                json f{{"name", item["name"]}};
                if (item.contains("id") && item["id"].is_string()) f["id"] = item["id"];
                f["description"] = item.contains("description") && item["description"].is_string()
                                       ? item["description"]
                                       : "";
                f["justification"] =
                    item.contains("justification") && item["justification"].is_string()
                        ? item["justification"]
                        : "";
                if (item.contains("rubric") && item["rubric"].is_string() &&
                    !item["rubric"].get<std::string>().empty()) {
                    f["rubric"] = item["rubric"];
                }
                added.push_back(std::move(f));
            }
        }
    }
    if (!schema.allow_augmentation && !added.empty()) {
        issues.push_back("augmentation is disabled for this run but added factors are present");
    }
    normalized["added"] = std::move(added);

    if (!issues.empty()) return {};
    return normalized;
}

json validate_score(const json& j, std::vector<std::string>& issues) {
    if (!j.is_object() || !j.contains("score") || !j["score"].is_number()) {
        issues.push_back("missing numeric \"score\"");
        return {};
    }
    check_score_range(j["score"], "score", issues);

    json normalized{{"score", j["score"]}};
    if (j.contains("sub_scores") && !j["sub_scores"].is_null()) {
        if (!j["sub_scores"].is_object()) {
            issues.push_back("\"sub_scores\" must be an object mapping factor id to number");
        } else {
            json subs = json::object();
            for (const auto& [key, value] : j["sub_scores"].items()) {
                if (!value.is_number()) {
                    issues.push_back("sub_score for " + key + " is not a number");
                    continue;
                }
                check_score_range(value, "sub_score " + key, issues);
                subs[key] = value;
            }
            normalized["sub_scores"] = std::move(subs);
        }
    }
    if (j.contains("rationale") && j["rationale"].is_string()) {
        normalized["rationale"] = j["rationale"];
    }
    if (!issues.empty()) return {};
    return normalized;
}

json validate_score_vector(const json& j, const ScoreVectorSchema& schema,
                           std::vector<std::string>& issues) {
    if (!j.is_object() || !j.contains("scores") || !j["scores"].is_array()) {
        issues.push_back("missing \"scores\" array");
        return {};
    }
    const auto& scores = j["scores"];
    if (schema.expected_count > 0 && scores.size() != schema.expected_count) {
        issues.push_back("expected " + std::to_string(schema.expected_count) + " scores, got " +
                         std::to_string(scores.size()));
        return {};
    }
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!scores[i].is_number()) {
            issues.push_back("score " + std::to_string(i + 1) + " is not a number");
            continue;
        }
        check_score_range(scores[i], "score " + std::to_string(i + 1), issues);
    }
    if (!issues.empty()) return {};
    return json{{"scores", scores}};
}

}  // namespace

ParseAttempt extract_first_fenced_json(const std::string& text) {
    ParseAttempt attempt;
    std::string candidate;

    const auto open = text.find("```");
    if (open == std::string::npos) {
        candidate = trim(text);
        if (candidate.empty()) {
            attempt.issues.push_back("completion is empty");
            return attempt;
        }
    } else {
        const auto lang_end = text.find('\n', open + 3);
        if (lang_end == std::string::npos) {
            attempt.issues.push_back("unterminated code fence");
            return attempt;
        }
        const auto close = text.find("```", lang_end + 1);
        if (close == std::string::npos) {
            attempt.issues.push_back("unterminated code fence");
            return attempt;
        }
        candidate = text.substr(lang_end + 1, close - lang_end - 1);
        // A second complete fenced block is ignored, with a note.
        const auto next_open = text.find("```", close + 3);
        if (next_open != std::string::npos && text.find("```", next_open + 3) != std::string::npos) {
            attempt.issues.push_back("multiple fenced blocks; using the first");
        }
    }

    try {
        attempt.value = json::parse(candidate);
    } catch (const json::exception& e) {
        attempt.value.reset();
        attempt.issues.push_back(std::string("invalid JSON: ") + e.what());
    }
    return attempt;
}

ParseAttempt parse_structured(const std::string& completion_text, const StructuredSchema& schema) {
    ParseAttempt extracted = extract_first_fenced_json(completion_text);
    if (!extracted.ok()) return extracted;

    ParseAttempt result;
    result.issues = extracted.issues;  // keep non-fatal notes (e.g. multiple blocks)

    std::vector<std::string> issues;
    json normalized = std::visit(
        [&](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GuidelineSchema>) {
                return validate_guideline(*extracted.value, issues);
            } else if constexpr (std::is_same_v<T, OrderingSchema>) {
                return validate_ordering(*extracted.value, s, issues);
            } else if constexpr (std::is_same_v<T, ScoreSchema>) {
                return validate_score(*extracted.value, issues);
            } else {
                return validate_score_vector(*extracted.value, s, issues);
            }
        },
        schema);

    result.issues.insert(result.issues.end(), issues.begin(), issues.end());
    if (issues.empty()) {
        result.value = std::move(normalized);
    }
    return result;
}

}  // namespace pref
