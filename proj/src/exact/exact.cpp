#include "pec/exact.hpp"

#include "pec/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>
#include <string_view>

namespace pec
{

std::uint64_t default_world_cap()
{
    const char* env = std::getenv("PEC_MAX_WORLDS");
    if (env == nullptr)
        return builtin_world_cap;
    const std::string_view text{ env };
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
        return builtin_world_cap;
    return value;
}

bool ResolvedPlan::fired(ActionId action, Instant instant) const
{
    return std::any_of(firings.begin(), firings.end(), [&](const Firing& f) {
        return f.fired && f.action == action && f.instant == instant;
    });
}

bool has_conditional_pprops(const Domain& domain)
{
    return std::any_of(domain.pprops.begin(), domain.pprops.end(),
                       [](const PProp& p) { return p.condition.has_value(); });
}

std::vector<ActionId> scheduled_actions(const Domain& domain, Instant instant)
{
    std::vector<ActionId> actions;
    for (const auto& pprop : domain.pprops)
        if (!pprop.condition && pprop.scheduled_at(instant) && domain.contains(instant))
            actions.push_back(pprop.action);
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    return actions;
}

namespace
{

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

/// Joint occurrence sets of one instant with their probabilities.
struct Branch
{
    OccurrenceSet occurrences;
    Probability probability;
};

std::vector<Branch> occurrence_branches(const Domain& domain, Instant instant, std::uint64_t cap)
{
    std::vector<ActionId> certain = scheduled_actions(domain, instant);
    std::vector<const OProp*> uncertain;
    for (const auto& oprop : domain.narrative) {
        if (oprop.instant != instant || oprop.probability.is_zero())
            continue;
        if (oprop.probability == Probability{ 1 })
            certain.push_back(oprop.action);
        else
            uncertain.push_back(&oprop);
    }
    if (uncertain.size() >= 63 || (std::uint64_t{ 1 } << uncertain.size()) > cap)
        throw ResourceLimitError("instant " + std::to_string(instant) + " has " + std::to_string(uncertain.size()) +
                                 " uncertain occurrences; more than " + std::to_string(cap) + " worlds");

    std::vector<Branch> branches;
    const std::uint64_t count = std::uint64_t{ 1 } << uncertain.size();
    branches.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Branch branch{ OccurrenceSet{ certain }, Probability{ 1 } };
        for (std::size_t k = 0; k < uncertain.size(); ++k) {
            // Bit for the first o-proposition is the most significant; "absent" comes first.
            const bool occurs = (mask >> (uncertain.size() - 1 - k)) & 1U;
            if (occurs) {
                branch.occurrences.insert(uncertain[k]->action);
                branch.probability *= uncertain[k]->probability;
            } else {
                branch.probability *= Probability{ 1 } - uncertain[k]->probability;
            }
        }
        branches.push_back(std::move(branch));
    }
    return branches;
}

class Enumerator
{
public:
    Enumerator(const Domain& domain, Instant last, bool occurrences_at_last, const ExactOptions& options)
        : domain_{ domain }, last_{ last }, occurrences_at_last_{ occurrences_at_last }, options_{ options }
    {
        if (has_conditional_pprops(domain))
            throw PreconditionError("world enumeration needs a resolved plan");
        if (!domain.contains(last))
            throw DomainError("instant " + std::to_string(last) + " is outside the timeline");
        for (Instant i = domain.origin;; ++i) {
            if (i < last || occurrences_at_last)
                branches_.push_back(occurrence_branches(domain, i, options.max_worlds));
            else
                branches_.push_back({ Branch{ OccurrenceSet{}, Probability{ 1 } } });
            if (i == last)
                break;
        }
        world_.origin = domain.origin;
    }

    void run(const WorldVisitor& visit)
    {
        visit_ = &visit;
        for (const auto& outcome : domain_.initial.outcomes) {
            world_.steps.push_back(Step{ outcome.state, {} });
            descend(outcome.probability);
            world_.steps.pop_back();
        }
    }

private:
    std::string bound_estimate() const
    {
        std::uint64_t bound = domain_.initial.outcomes.size();
        std::size_t widest = 1;
        for (const auto& cprop : domain_.cprops)
            widest = std::max(widest, cprop.outcomes.size());
        for (std::size_t k = 0; k < branches_.size(); ++k) {
            bound = saturating_mul(bound, branches_[k].size());
            if (k + 1 < branches_.size())
                bound = saturating_mul(bound, widest);
        }
        return bound == std::numeric_limits<std::uint64_t>::max() ? "more than 2^64" : std::to_string(bound);
    }

    void descend(const Probability& weight)
    {
        const std::size_t depth = world_.steps.size() - 1;
        const auto& branches = branches_[depth];
        const bool final = depth + 1 == branches_.size();
        for (const auto& branch : branches) {
            world_.steps.back().occurrences = branch.occurrences;
            const Probability with_events = weight * branch.probability;
            if (final) {
                if (++visited_ > options_.max_worlds)
                    throw ResourceLimitError("more than " + std::to_string(options_.max_worlds) +
                                             " worlds (upper bound estimate " + bound_estimate() + ")");
                (*visit_)(world_, with_events);
                continue;
            }
            for (auto& [next, probability] : successors(domain_, world_.steps.back().state, branch.occurrences)) {
                world_.steps.push_back(Step{ next, {} });
                descend(with_events * probability);
                world_.steps.pop_back();
            }
        }
        world_.steps.back().occurrences = OccurrenceSet{};
    }

    const Domain& domain_;
    Instant last_;
    bool occurrences_at_last_;
    const ExactOptions& options_;
    std::vector<std::vector<Branch>> branches_;
    World world_;
    const WorldVisitor* visit_ = nullptr;
    std::uint64_t visited_ = 0;
};

Domain unconditional_part(const Domain& domain)
{
    Domain result = domain;
    std::erase_if(result.pprops, [](const PProp& p) { return p.condition.has_value(); });
    return result;
}

} // namespace

void for_each_world(const Domain& resolved, Instant last, bool occurrences_at_last, const WorldVisitor& visit,
                    const ExactOptions& options)
{
    Enumerator{ resolved, last, occurrences_at_last, options }.run(visit);
}

namespace
{

std::vector<std::pair<State, Probability>> distribution_of(const Domain& resolved, Instant instant,
                                                           const ExactOptions& options)
{
    std::map<State, Probability> mass;
    for_each_world(
        resolved, instant, false,
        [&](const World& world, const Probability& weight) { mass[world.at(instant).state] += weight; }, options);
    return { mass.begin(), mass.end() };
}

} // namespace

ResolvedPlan resolve_plan(const Domain& domain, std::optional<Instant> upto, const ExactOptions& options)
{
    ResolvedPlan plan;
    const Instant last = std::min(upto.value_or(domain.horizon), domain.horizon);
    Domain working = unconditional_part(domain);
    for (Instant instant = domain.origin; instant <= last; ++instant) {
        std::optional<std::vector<std::pair<State, Probability>>> belief_state;
        std::vector<PProp> fired_now;
        for (std::size_t k = 0; k < domain.pprops.size(); ++k) {
            const auto& pprop = domain.pprops[k];
            if (!pprop.scheduled_at(instant))
                continue;
            Firing firing{ k, instant, pprop.action, std::nullopt, true };
            if (pprop.condition) {
                if (!belief_state)
                    belief_state = distribution_of(working, instant, options);
                const BoundFormula condition = bind_condition(pprop.condition->formula, domain);
                Probability belief;
                for (const auto& [state, probability] : *belief_state)
                    if (condition.evaluate(state))
                        belief += probability;
                firing.fired = pprop.condition->admits(belief);
                firing.belief = std::move(belief);
                if (firing.fired)
                    fired_now.push_back(PProp{ pprop.action, instant, std::nullopt });
            }
            plan.firings.push_back(std::move(firing));
        }
        // Decisions at this instant only influence later beliefs.
        working.pprops.insert(working.pprops.end(), fired_now.begin(), fired_now.end());
        if (instant == last)
            break;
    }
    return plan;
}

Domain apply_plan(const Domain& domain, const ResolvedPlan& plan)
{
    Domain result = domain;
    result.pprops.clear();
    for (const auto& firing : plan.firings) {
        if (!firing.fired)
            continue;
        PProp pprop{ firing.action, firing.instant, std::nullopt };
        if (std::find(result.pprops.begin(), result.pprops.end(), pprop) == result.pprops.end())
            result.pprops.push_back(std::move(pprop));
    }
    return result;
}

Probability world_weight(const Domain& domain, const World& world)
{
    if (has_conditional_pprops(domain))
        return world_weight(apply_plan(domain, resolve_plan(domain)), world);
    if (world.origin != domain.origin || world.steps.empty() || world.last() != domain.horizon)
        throw PreconditionError("world does not span the timeline");

    Probability weight;
    for (const auto& outcome : domain.initial.outcomes)
        if (outcome.state == world.steps.front().state)
            weight = outcome.probability;

    for (Instant instant = domain.origin; !weight.is_zero(); ++instant) {
        const Step& step = world.at(instant);
        // Occurrence factor.
        const auto forced = scheduled_actions(domain, instant);
        for (ActionId action = 0; action < domain.actions().size() && !weight.is_zero(); ++action) {
            const bool occurs = step.occurrences.contains(action);
            if (domain.action(action).kind == ActionKind::agent) {
                const bool fired = std::binary_search(forced.begin(), forced.end(), action);
                if (occurs != fired)
                    weight = Probability{};
                continue;
            }
            const auto oprop = std::find_if(domain.narrative.begin(), domain.narrative.end(), [&](const OProp& o) {
                return o.action == action && o.instant == instant;
            });
            if (oprop == domain.narrative.end())
                weight = occurs ? Probability{} : weight;
            else
                weight *= occurs ? oprop->probability : Probability{ 1 } - oprop->probability;
        }
        for (ActionId action : step.occurrences.actions())
            if (action >= domain.actions().size())
                weight = Probability{};
        if (instant == domain.horizon || weight.is_zero())
            break;
        // Transition factor.
        const State& next = world.at(instant + 1).state;
        Probability factor;
        for (const auto& [state, probability] : successors(domain, step.state, step.occurrences))
            if (state == next)
                factor = probability;
        weight *= factor;
    }
    return weight;
}

Probability Measure::total() const
{
    Probability sum;
    for (const auto& world : worlds)
        sum += world.weight;
    return sum;
}

Measure enumerate_worlds(const Domain& domain, const ExactOptions& options)
{
    const Domain resolved = apply_plan(domain, resolve_plan(domain, std::nullopt, options));
    Measure measure;
    for_each_world(
        resolved, resolved.horizon, true,
        [&](const World& world, const Probability& weight) { measure.worlds.push_back(WeightedWorld{ world, weight }); },
        options);
    return measure;
}

std::vector<std::pair<State, Probability>> state_distribution(const Domain& domain, Instant instant,
                                                              const ExactOptions& options)
{
    if (!domain.contains(instant))
        throw DomainError("instant " + std::to_string(instant) + " is outside the timeline");
    const Domain resolved = apply_plan(domain, resolve_plan(domain, instant, options));
    return distribution_of(resolved, instant, options);
}

Probability query(const Domain& domain, const Formula& formula, const ExactOptions& options)
{
    const BoundFormula bound = bind_query(formula, domain);
    const Instant last = formula.max_instant().value_or(domain.origin);
    for (Instant instant : formula.instants())
        if (!domain.contains(instant))
            throw DomainError("query instant " + std::to_string(instant) + " is outside the timeline " +
                              std::to_string(domain.origin) + ".." + std::to_string(domain.horizon));
    const Domain resolved = apply_plan(domain, resolve_plan(domain, last, options));
    // Worlds are cut after the last queried instant: every suffix distribution sums to 1.
    // Occurrences at that instant only matter when the formula mentions one.
    const bool occurrences_at_last =
        std::any_of(bound.nodes().begin(), bound.nodes().end(), [&](const BoundFormula::Node& node) {
            return node.kind == BoundFormula::Kind::action && node.instant == last;
        });
    Probability result;
    for_each_world(
        resolved, last, occurrences_at_last,
        [&](const World& world, const Probability& weight) {
            if (bound.evaluate(world))
                result += weight;
        },
        options);
    return result;
}

} // namespace pec
