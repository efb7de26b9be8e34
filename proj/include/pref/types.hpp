#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pref {

/// One candidate answer `a` to a benchmark question.
struct CandidateAnswer {
    std::string id;
    std::string text;

    bool operator==(const CandidateAnswer&) const = default;
};

/// One benchmark item: question q, user preference p, optional explanation e,
/// candidate answers with a single gold index.
struct EvalInstance {
    std::string id;
    std::string question;
    std::string preference;
    std::optional<std::string> explanation;
    std::vector<CandidateAnswer> candidates;
    std::size_t gold_index = 0;

    bool operator==(const EvalInstance&) const = default;
};

enum class FactorOrigin { Coverage, Augmented };

std::string to_string(FactorOrigin origin);
FactorOrigin factor_origin_from_string(const std::string& s);

/// A single evaluation criterion f_i. Ids are assigned sequentially at
/// coverage time ("F1", "F2", ...) and carried verbatim through prompts;
/// augmented factors get "A1", "A2", ... and must carry a justification.
struct Factor {
    std::string id;
    std::string name;
    std::string description;
    std::optional<std::string> rubric;
    FactorOrigin origin = FactorOrigin::Coverage;
    std::optional<std::string> justification;

    bool operator==(const Factor&) const = default;
};

enum class Role { Coverage, Preference, Scoring };

std::string to_string(Role role);
Role role_from_string(const std::string& s);

/// Binding of a pipeline role to a concrete model. Temperature defaults to 0
/// for reproducibility; the fingerprint participates in cache keys.
struct ModelRole {
    Role role = Role::Coverage;
    std::string provider;
    std::string model_name;
    double temperature = 0.0;

    std::string fingerprint() const;

    bool operator==(const ModelRole&) const = default;
};

/// Query-specific, preference-agnostic guideline g from the coverage stage.
struct GeneralGuideline {
    std::string query_id;
    std::vector<Factor> factors;
    ModelRole producer;

    std::vector<std::string> factor_ids() const;

    bool operator==(const GeneralGuideline&) const = default;
};

/// Personalized guideline g*: a full permutation of the base factor ids,
/// extended with augmented factor ids, plus optional per-factor weights.
struct PersonalizedGuideline {
    GeneralGuideline base;
    std::vector<std::string> ordering;
    std::optional<std::map<std::string, double>> weights;
    std::vector<Factor> added;
    ModelRole producer;

    /// Factors in personalized order (base and added merged by `ordering`).
    std::vector<Factor> ordered_factors() const;

    bool operator==(const PersonalizedGuideline&) const = default;
};

/// Final judge output for one (instance, candidate) pair, on the [0, 10] scale.
struct AnswerScore {
    std::string instance_id;
    std::string candidate_id;
    double value = 0.0;
    std::optional<std::map<std::string, double>> sub_scores;
    std::optional<std::string> rationale;

    bool operator==(const AnswerScore&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

}  // namespace pref
