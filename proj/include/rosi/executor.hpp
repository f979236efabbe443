#pragma once

#include "rosi/plan.hpp"
#include "rosi/providers.hpp"
#include "rosi/relation.hpp"

namespace rosi {

// Natural join: all pairings that agree on every shared attribute. NULL never
// joins with NULL. Output schema is left attributes followed by the right
// attributes minus shared ones. Throws AmbiguityUnsupported when the schemas
// share no attribute.
Relation natural_join(const Relation& left, const Relation& right);

// Evaluates a plan against the providers with pull-based operator iteration;
// Sort and Distinct are the only materializing operators (joins buffer their
// build side). Each Scan takes its own snapshot. ProviderUnavailable is an
// error for single-scan plans; in plans spanning several scans the failed
// scan degrades to empty with a warning.
Relation execute(const PlanNode& plan, const ProviderSet& providers, Diagnostics& diag);

}  // namespace rosi
