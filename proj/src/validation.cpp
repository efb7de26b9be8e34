#include "pref/validation.hpp"

#include <map>
#include <set>
#include <string>

namespace pref {

ValidationReport validate_instance(const EvalInstance& instance) {
    ValidationReport report;

    if (instance.id.empty()) {
        report.violations.push_back("instance id is empty");
    }
    if (instance.candidates.size() < 2) {
        report.violations.push_back("candidates list too short: need at least 2, got " +
                                    std::to_string(instance.candidates.size()));
    }
    if (instance.gold_index >= instance.candidates.size()) {
        report.violations.push_back("gold_index out of range: " +
                                    std::to_string(instance.gold_index) + " with " +
                                    std::to_string(instance.candidates.size()) + " candidates");
    }

    std::set<std::string> seen;
    for (const auto& candidate : instance.candidates) {
        if (candidate.text.empty()) {
            report.violations.push_back("candidate text empty: " + candidate.id);
        }
        if (!seen.insert(candidate.id).second) {
            report.violations.push_back("duplicate candidate id: " + candidate.id);
        }
    }
    return report;
}

ValidationReport validate_personalization(const GeneralGuideline& g,
                                          const PersonalizedGuideline& g_star) {
    ValidationReport report;

    std::set<std::string> base_ids;
    for (const auto& f : g.factors) base_ids.insert(f.id);

    std::set<std::string> added_ids;
    for (const auto& f : g_star.added) {
        if (!added_ids.insert(f.id).second) {
            report.violations.push_back("duplicated factor id: " + f.id);
        }
        if (base_ids.count(f.id) > 0) {
            report.violations.push_back("added factor id collides with base id: " + f.id);
        }
        if (f.origin != FactorOrigin::Augmented) {
            report.violations.push_back("added factor has wrong origin: " + f.id);
        }
        if (!f.justification.has_value() || f.justification->empty()) {
            report.violations.push_back("augmented factor lacks justification: " + f.id);
        }
    }

    std::map<std::string, int> counts;
    for (const auto& id : g_star.ordering) {
        counts[id] += 1;
        if (base_ids.count(id) == 0 && added_ids.count(id) == 0) {
            report.violations.push_back("unknown factor id in ordering: " + id);
        }
    }
    for (const auto& id : base_ids) {
        auto it = counts.find(id);
        if (it == counts.end()) {
            report.violations.push_back("missing factor id: " + id);
        } else if (it->second > 1) {
            report.violations.push_back("duplicated factor id: " + id);
        }
    }
    for (const auto& id : added_ids) {
        auto it = counts.find(id);
        if (it == counts.end()) {
            report.violations.push_back("added factor not in ordering: " + id);
        } else if (it->second > 1) {
            report.violations.push_back("duplicated factor id: " + id);
        }
    }

    if (g_star.weights.has_value()) {
        const auto& weights = *g_star.weights;
        for (const auto& id : g_star.ordering) {
            if (weights.find(id) == weights.end()) {
                report.violations.push_back("weight map incomplete: missing weight for " + id);
            }
        }
        for (const auto& [id, w] : weights) {
            if (w < 0.0) {
                report.violations.push_back("negative weight for " + id);
            }
            if (base_ids.count(id) == 0 && added_ids.count(id) == 0) {
                report.violations.push_back("weight for unknown factor id: " + id);
            }
        }
    }

    return report;
}

}  // namespace pref
