#pragma once

#include "pref/types.hpp"

namespace pref {

/// Reports every violated EvalInstance invariant. Never throws.
ValidationReport validate_instance(const EvalInstance& instance);

/// Checks that g*'s ordering is a full permutation of g's factor ids plus the
/// added factor ids, that every augmented factor carries a justification, and
/// that the weight map (when present) covers every ordered id with a
/// non-negative value. Never throws.
ValidationReport validate_personalization(const GeneralGuideline& g,
                                          const PersonalizedGuideline& g_star);

}  // namespace pref
