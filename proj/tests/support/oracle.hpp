#pragma once

#include "pec/domain.hpp"
#include "pec/formula.hpp"

#include <utility>
#include <vector>

namespace pec::testing
{

// Brute force straight from the world semantics: every path of states and
// occurrence sets is enumerated and weighted by hand. Shares no code with
// the engines beyond the data types. Unconditional plans only.

/// Probability of an i-formula.
Probability oracle_query(const Domain& domain, const Formula& formula);

/// Marginal distribution over states at `instant`, sorted by state.
std::vector<std::pair<State, Probability>> oracle_distribution(const Domain& domain, Instant instant);

/// Number of paths with nonzero weight over the whole timeline.
std::size_t oracle_world_count(const Domain& domain);

} // namespace pec::testing
