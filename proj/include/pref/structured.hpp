#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace pref {

enum class ParseStatus { Ok, Repaired, Failed };

std::string to_string(ParseStatus status);

struct ParseReport {
    ParseStatus status = ParseStatus::Ok;
    std::vector<std::string> issues;
};

/// Shape contracts for each stage's fenced JSON output; see
/// docs/output_schemas.md for the published forms.
struct GuidelineSchema {};

struct OrderingSchema {
    bool allow_augmentation = true;
};

struct ScoreSchema {};

struct ScoreVectorSchema {
    std::size_t expected_count = 0;
};

using StructuredSchema =
    std::variant<GuidelineSchema, OrderingSchema, ScoreSchema, ScoreVectorSchema>;

struct ParseAttempt {
    std::optional<nlohmann::json> value;  // normalized, schema-valid value when set
    std::vector<std::string> issues;

    bool ok() const { return value.has_value(); }
};

/// Extracts the first fenced JSON block (``` or ```json). When the text has
/// no fence at all, the whole trimmed text is tried as JSON. A second fenced
/// block is ignored with an issue recorded.
ParseAttempt extract_first_fenced_json(const std::string& text);

/// One parse-and-validate pass, no repair. Returned values are normalized:
///   guideline    -> {"factors": [{"name","description","rubric"?}...]}
///   ordering     -> {"ordering": [...], "added": [...], "weights"?: {...}}
///   score        -> {"score": x, "sub_scores"?: {...}, "rationale"?: "..."}
///   score_vector -> {"scores": [...]}
ParseAttempt parse_structured(const std::string& completion_text, const StructuredSchema& schema);

}  // namespace pref
