#include "pec/sensing.hpp"

#include "pec/error.hpp"

#include <algorithm>

namespace pec
{

std::string to_string(SenseResult result)
{
    return result == SenseResult::positive ? "positive" : "negative";
}

namespace
{

/// P(result | F) and P(result | !F).
std::pair<Probability, Probability> rates(const SProp& sprop, SenseResult result)
{
    const std::size_t column = result == SenseResult::positive ? 0 : 1;
    return { sprop.accuracies[0][column], sprop.accuracies[1][column] };
}

} // namespace

Probability observation_likelihood(const Probability& prior, const SProp& sprop, SenseResult result)
{
    const auto [given_true, given_false] = rates(sprop, result);
    return prior * given_true + (Probability{ 1 } - prior) * given_false;
}

Probability bayes_posterior(const Probability& prior, const SProp& sprop, SenseResult result)
{
    const Probability evidence = observation_likelihood(prior, sprop, result);
    if (evidence.is_zero())
        throw ImpossibleObservation("impossible observation: a " + to_string(result) +
                                    " result has probability 0 under prior " + prior.to_string());
    return prior * rates(sprop, result).first / evidence;
}

TranslatedObservation translate_observation(const Domain& domain, const SProp& sprop, const Observation& observation,
                                            const Probability& prior)
{
    if (!domain.fluent(sprop.fluent).is_boolean())
        throw UnsupportedDomain("only boolean fluents can be sensed");
    const Probability posterior = bayes_posterior(prior, sprop, observation.result);
    const auto& fluent = domain.fluent(sprop.fluent).name;

    TranslatedObservation translated;
    translated.action = domain.action(observation.sense).name +
                        (observation.result == SenseResult::positive ? "_pos_" : "_neg_") +
                        std::to_string(observation.instant);
    if (posterior >= prior) {
        translated.effect = domain.literal(fluent, true);
        translated.probability = posterior == prior ? Probability{} : (posterior - prior) / (Probability{ 1 } - prior);
    } else {
        translated.effect = domain.literal(fluent, false);
        translated.probability = (prior - posterior) / prior;
    }
    return translated;
}

ActionId inject_observation(Domain& domain, const TranslatedObservation& translated)
{
    if (domain.find_action(translated.action))
        throw UnsupportedDomain("action '" + translated.action + "' already exists; one observation per sensor and instant");
    const ActionId action = domain.add_action(translated.action, ActionKind::environment);
    CProp cprop;
    cprop.condition.actions.push_back(ActionLiteral{ action, true });
    cprop.outcomes.push_back(Outcome{ { translated.effect }, Probability{ 1 } });
    domain.cprops.push_back(std::move(cprop));
    return action;
}

const SProp& sprop_for(const Domain& domain, ActionId sense)
{
    for (const auto& sprop : domain.sprops)
        if (sprop.action == sense)
            return sprop;
    throw DomainError("action '" + domain.action(sense).name + "' has no senses declaration");
}

BeliefState apply_observation(const Domain& domain, const BeliefState& belief, const Observation& observation,
                              const TickInput& tick, std::span<const ActionId> fired)
{
    if (observation.instant != belief.instant)
        throw PreconditionError("observation at instant " + std::to_string(observation.instant) +
                                " applied to belief at " + std::to_string(belief.instant));
    const SProp& sprop = sprop_for(domain, observation.sense);
    const Probability prior = belief.marginal(domain.literal(domain.fluent(sprop.fluent).name, true));
    const TranslatedObservation translated = translate_observation(domain, sprop, observation, prior);

    Domain augmented = domain;
    const ActionId action = inject_observation(augmented, translated);
    TickInput input{ belief.instant, tick.events };
    input.events.push_back(TickEvent{ action, translated.probability });
    try {
        return progress_step(augmented, belief, input, fired);
    } catch (const AmbiguousMatchError&) {
        throw UnsupportedDomain("observation of " + domain.fluent(sprop.fluent).name + " at instant " +
                                std::to_string(observation.instant) + " coincides with another causal rule");
    }
}

OutcomeForecast forecast_outcomes(const Domain& domain)
{
    if (domain.sprops.size() != 1)
        throw UnsupportedDomain("forecasting needs exactly one senses declaration");
    const SProp& sprop = domain.sprops.front();
    if (!domain.fluent(sprop.fluent).is_boolean())
        throw UnsupportedDomain("only boolean fluents can be sensed");
    for (const auto& cprop : domain.cprops)
        for (const auto& outcome : cprop.outcomes)
            for (const auto& literal : outcome.effect)
                if (literal.fluent == sprop.fluent)
                    throw UnsupportedDomain("causal rules change the sensed fluent " +
                                            domain.fluent(sprop.fluent).name);

    OutcomeForecast forecast;
    forecast.sense = sprop.action;
    forecast.fluent = sprop.fluent;
    for (const auto& pprop : domain.pprops) {
        if (pprop.action != sprop.action || pprop.condition)
            continue;
        if (pprop.instant) {
            if (domain.contains(*pprop.instant))
                forecast.instants.push_back(*pprop.instant);
        } else {
            for (Instant i = domain.origin;; ++i) {
                forecast.instants.push_back(i);
                if (i == domain.horizon)
                    break;
            }
        }
    }
    std::sort(forecast.instants.begin(), forecast.instants.end());
    forecast.instants.erase(std::unique(forecast.instants.begin(), forecast.instants.end()), forecast.instants.end());
    if (forecast.instants.empty())
        throw PreconditionError("the sensing action is never performed");
    if (forecast.instants.size() > 20)
        throw ResourceLimitError("more than 20 sensing performances to forecast");

    const FluentLiteral holds = domain.literal(domain.fluent(sprop.fluent).name, true);
    forecast.prior = belief_at(domain, forecast.instants.front()).marginal(holds);
    const std::size_t n = forecast.instants.size();
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        ForecastRow row;
        Probability given_true{ 1 };
        Probability given_false{ 1 };
        for (std::size_t k = 0; k < n; ++k) {
            const bool positive = (mask >> (n - 1 - k)) & 1U;
            const SenseResult result = positive ? SenseResult::positive : SenseResult::negative;
            row.results.push_back(result);
            const auto [t, f] = rates(sprop, result);
            given_true *= t;
            given_false *= f;
        }
        row.probability = forecast.prior * given_true + (Probability{ 1 } - forecast.prior) * given_false;
        row.posterior = row.probability.is_zero() ? forecast.prior : forecast.prior * given_true / row.probability;
        forecast.rows.push_back(std::move(row));
    }
    return forecast;
}

} // namespace pec
