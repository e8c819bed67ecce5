#pragma once

#include "pec/domain.hpp"
#include "pec/progression.hpp"

#include <string>
#include <vector>

namespace pec
{

enum class SenseResult
{
    negative,
    positive
};

std::string to_string(SenseResult result);

struct Observation
{
    ActionId sense = 0; // the sensing action of an s-proposition
    Instant instant = 0;
    SenseResult result = SenseResult::positive;
};

/// An observation rewritten as an ordinary uncertain event: a fresh
/// environment action that deterministically sets the sensed fluent and occurs
/// with `probability`.
struct TranslatedObservation
{
    std::string action; // `<Sense>_pos_<I>` or `<Sense>_neg_<I>`
    FluentLiteral effect;
    Probability probability;
};

/// P(result | prior) for a sensor. Zero means the observation is impossible.
Probability observation_likelihood(const Probability& prior, const SProp& sprop, SenseResult result);

/// Bayes' rule on the accuracy matrix. Throws ImpossibleObservation when the
/// result has probability zero under the prior.
Probability bayes_posterior(const Probability& prior, const SProp& sprop, SenseResult result);

/// When a > b a positive result yields effect F with probability
/// p(a-b)/(p(a-b)+b) and a negative one effect !F with probability
/// (p-1)(a-b)/(p(a-b)+b-1). When a < b the roles of F and !F swap.
TranslatedObservation translate_observation(const Domain& domain, const SProp& sprop, const Observation& observation,
                                            const Probability& prior);

/// Adds the translated action and its causal rule to `domain`; returns the new action.
ActionId inject_observation(Domain& domain, const TranslatedObservation& translated);

/// The s-proposition whose sensing action is `sense`. Throws DomainError if none.
const SProp& sprop_for(const Domain& domain, ActionId sense);

/// Translation plus one progression step from belief.instant. Other events of
/// that instant can be passed in `tick`. Throws UnsupportedDomain when an
/// existing causal rule would fire together with the injected one.
BeliefState apply_observation(const Domain& domain, const BeliefState& belief, const Observation& observation,
                              const TickInput& tick = {}, std::span<const ActionId> fired = {});

struct ForecastRow
{
    std::vector<SenseResult> results;
    Probability probability;
    Probability posterior;
};

struct OutcomeForecast
{
    ActionId sense = 0;
    FluentId fluent = 0;
    std::vector<Instant> instants; // when the sensing action is performed
    Probability prior;
    std::vector<ForecastRow> rows; // negative before positive, first sensing most significant
};

/// All 2^n result sequences for the unconditional performances of the
/// domain's single sensing action. Throws UnsupportedDomain if causal rules
/// can change the sensed fluent.
OutcomeForecast forecast_outcomes(const Domain& domain);

} // namespace pec
