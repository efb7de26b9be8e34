#include "pref/types.hpp"

#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace pref {

std::string to_string(FactorOrigin origin) {
    return origin == FactorOrigin::Coverage ? "coverage" : "augmented";
}

FactorOrigin factor_origin_from_string(const std::string& s) {
    if (s == "coverage") return FactorOrigin::Coverage;
    if (s == "augmented") return FactorOrigin::Augmented;
    throw std::invalid_argument("unknown factor origin: " + s);
}

std::string to_string(Role role) {
    switch (role) {
        case Role::Coverage: return "coverage";
        case Role::Preference: return "preference";
        case Role::Scoring: return "scoring";
    }
    return "unknown";
}

Role role_from_string(const std::string& s) {
    if (s == "coverage") return Role::Coverage;
    if (s == "preference") return Role::Preference;
    if (s == "scoring") return Role::Scoring;
    throw std::invalid_argument("unknown role: " + s);
}

std::string ModelRole::fingerprint() const {
    char temp[32];
    std::snprintf(temp, sizeof(temp), "%g", temperature);
    return provider + "/" + model_name + "@t=" + temp;
}

std::vector<std::string> GeneralGuideline::factor_ids() const {
    std::vector<std::string> ids;
    ids.reserve(factors.size());
    for (const auto& f : factors) ids.push_back(f.id);
    return ids;
}

std::vector<Factor> PersonalizedGuideline::ordered_factors() const {
    std::unordered_map<std::string, const Factor*> by_id;
    for (const auto& f : base.factors) by_id[f.id] = &f;
    for (const auto& f : added) by_id[f.id] = &f;

    std::vector<Factor> out;
    out.reserve(ordering.size());
    for (const auto& id : ordering) {
        auto it = by_id.find(id);
        if (it != by_id.end()) out.push_back(*it->second);
    }
    return out;
}

}  // namespace pref
