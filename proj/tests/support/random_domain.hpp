#pragma once

#include "pec/domain.hpp"
#include "pec/formula.hpp"

#include <random>

namespace pec::testing
{

struct RandomDomainOptions
{
    std::size_t max_fluents = 2;
    std::size_t max_actions = 2;
    Instant max_horizon = 3;
    bool narrative_only_at_origin = false;
    bool multi_valued = false;    // some fluents get three values
    bool agent_actions = false;   // unconditional p-propositions
    bool belief_pprops = false;   // if-believes p-propositions (not for the oracle)
    bool sensing = false;         // s-propositions
};

using Rng = std::mt19937_64;

/// A valid domain: overlapping c-propositions are dropped, weights normalized.
Domain random_domain(Rng& rng, const RandomDomainOptions& options = {});

/// Random i-formula over the domain's fluents and actions at instants in [lo, hi].
Formula random_query(Rng& rng, const Domain& domain, Instant lo, Instant hi, int depth = 2);

/// Random instant-free formula over fluents only.
Formula random_condition(Rng& rng, const Domain& domain, int depth = 2);

/// Random probability with a small denominator; zero only when allowed.
Probability random_probability(Rng& rng, bool allow_zero = true);

} // namespace pec::testing
