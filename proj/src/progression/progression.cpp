#include "pec/progression.hpp"

#include "pec/error.hpp"

#include <algorithm>

namespace pec
{

Probability BeliefState::total() const
{
    Probability sum;
    for (const auto& entry : support)
        sum += entry.second;
    return sum;
}

Probability BeliefState::probability_of(const BoundFormula& condition) const
{
    Probability sum;
    for (const auto& [state, probability] : support)
        if (condition.evaluate(state))
            sum += probability;
    return sum;
}

Probability BeliefState::marginal(FluentLiteral literal) const
{
    Probability sum;
    for (const auto& [state, probability] : support)
        if (state.satisfies(literal))
            sum += probability;
    return sum;
}

bool CooldownState::blocks(ActionId action, Instant instant) const
{
    const auto it = last_.find(action);
    return it != last_.end() && instant > it->second && instant - it->second <= cooldown_;
}

BeliefState initial_belief(const Domain& domain)
{
    BeliefState belief;
    belief.instant = domain.origin;
    for (const auto& outcome : domain.initial.outcomes)
        if (!outcome.probability.is_zero())
            belief.support.emplace_back(outcome.state, outcome.probability);
    std::sort(belief.support.begin(), belief.support.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return belief;
}

std::vector<Decision> fire_pprops(const Domain& domain, const BeliefState& belief, CooldownState& cooldown)
{
    std::vector<Decision> decisions;
    for (std::size_t k = 0; k < domain.pprops.size(); ++k) {
        const auto& pprop = domain.pprops[k];
        if (!pprop.scheduled_at(belief.instant) || !domain.contains(belief.instant))
            continue;
        Decision decision{ belief.instant, pprop.action, k, std::nullopt, false };
        if (pprop.condition) {
            Probability value = belief.probability_of(bind_condition(pprop.condition->formula, domain));
            const bool fires = pprop.condition->admits(value);
            decision.belief = std::move(value);
            if (!fires)
                continue;
        }
        decision.suppressed = cooldown.blocks(pprop.action, belief.instant);
        decisions.push_back(std::move(decision));
    }
    for (const auto& decision : decisions)
        if (!decision.suppressed)
            cooldown.record(decision.action, decision.instant);
    return decisions;
}

std::vector<ActionId> executed_actions(std::span<const Decision> decisions)
{
    std::vector<ActionId> actions;
    for (const auto& decision : decisions)
        if (!decision.suppressed)
            actions.push_back(decision.action);
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    return actions;
}

namespace
{

bool mentioned_by_cprops(const Domain& domain, ActionId action)
{
    for (const auto& cprop : domain.cprops)
        for (const auto& literal : cprop.condition.actions)
            if (literal.action == action)
                return true;
    return false;
}

} // namespace

BeliefState progress_step(const Domain& domain, const BeliefState& belief, const TickInput& tick,
                          std::span<const ActionId> fired)
{
    if (tick.instant != belief.instant)
        throw PreconditionError("tick for instant " + std::to_string(tick.instant) + " applied to belief at " +
                                std::to_string(belief.instant));

    std::vector<ActionId> certain;
    std::vector<const TickEvent*> uncertain;
    std::vector<ActionId> seen;
    for (ActionId action : fired)
        if (mentioned_by_cprops(domain, action))
            certain.push_back(action);
    for (const auto& event : tick.events) {
        if (std::find(seen.begin(), seen.end(), event.action) != seen.end())
            throw PreconditionError("action " + domain.action(event.action).name + " listed twice at instant " +
                                    std::to_string(tick.instant));
        seen.push_back(event.action);
        if (!event.probability.is_probability())
            throw PreconditionError("event probability " + event.probability.to_string() + " outside [0, 1]");
        if (event.probability.is_zero() || !mentioned_by_cprops(domain, event.action))
            continue;
        if (event.probability == Probability{ 1 })
            certain.push_back(event.action);
        else
            uncertain.push_back(&event);
    }
    if (uncertain.size() > 24)
        throw ResourceLimitError("more than 24 uncertain relevant events at instant " + std::to_string(tick.instant));

    // Joint occurrence sets of the relevant actions.
    std::vector<std::pair<OccurrenceSet, Probability>> branches;
    const std::uint64_t count = std::uint64_t{ 1 } << uncertain.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        OccurrenceSet occurrences{ certain };
        Probability probability{ 1 };
        for (std::size_t k = 0; k < uncertain.size(); ++k) {
            if ((mask >> k) & 1U) {
                occurrences.insert(uncertain[k]->action);
                probability *= uncertain[k]->probability;
            } else {
                probability *= Probability{ 1 } - uncertain[k]->probability;
            }
        }
        branches.emplace_back(std::move(occurrences), std::move(probability));
    }

    std::map<State, Probability> next;
    for (const auto& [state, mass] : belief.support) {
        for (const auto& [occurrences, probability] : branches) {
            const Probability weight = mass * probability;
            for (auto& [successor, p] : successors(domain, state, occurrences))
                next[successor] += weight * p;
        }
    }

    BeliefState result;
    result.instant = belief.instant + 1;
    result.support.reserve(next.size());
    for (auto& [state, probability] : next)
        if (!probability.is_zero())
            result.support.emplace_back(state, std::move(probability));
    if (const Probability total = result.total(); total != Probability{ 1 })
        throw Error("belief mass after instant " + std::to_string(tick.instant) + " is " + total.to_string() +
                    ", not 1");
    return result;
}

namespace
{

TickInput narrative_tick(const Domain& domain, Instant instant)
{
    TickInput tick{ instant, {} };
    for (const auto& oprop : domain.narrative)
        if (oprop.instant == instant)
            tick.events.push_back(TickEvent{ oprop.action, oprop.probability });
    return tick;
}

} // namespace

BeliefState belief_at(const Domain& domain, Instant upto)
{
    if (!domain.contains(upto))
        throw DomainError("instant " + std::to_string(upto) + " is outside the timeline");
    BeliefState belief = initial_belief(domain);
    CooldownState no_cooldown{ 0 };
    while (belief.instant < upto) {
        const auto decisions = fire_pprops(domain, belief, no_cooldown);
        belief = progress_step(domain, belief, narrative_tick(domain, belief.instant), executed_actions(decisions));
    }
    return belief;
}

Domain progressed_domain(const Domain& domain, Instant upto)
{
    if (upto == domain.origin)
        return domain;
    const BeliefState belief = belief_at(domain, upto);
    Domain result = domain;
    result.origin = upto;
    result.initial.outcomes.clear();
    for (const auto& [state, probability] : belief.support)
        result.initial.outcomes.push_back(InitialOutcome{ state, probability });
    std::erase_if(result.narrative, [&](const OProp& o) { return o.instant < upto; });
    std::erase_if(result.pprops, [&](const PProp& p) { return p.instant && *p.instant < upto; });
    return result;
}

} // namespace pec
