#include "oracle.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace pec::testing
{

namespace
{

struct Path
{
    std::vector<State> states;
    std::vector<std::vector<bool>> occurs; // [instant - origin][action]
};

bool literal_holds(const State& state, const FluentLiteral& literal)
{
    return state[literal.fluent] == literal.value;
}

bool condition_holds(const Condition& condition, const State& state, const std::vector<bool>& occurs)
{
    for (const auto& literal : condition.fluents)
        if (!literal_holds(state, literal))
            return false;
    for (const auto& literal : condition.actions)
        if (occurs[literal.action] != literal.occurred)
            return false;
    return true;
}

/// Probability that `action` occurs at `instant` under an unconditional plan.
Probability occurrence_probability(const Domain& domain, ActionId action, Instant instant)
{
    if (domain.action(action).kind == ActionKind::agent) {
        for (const auto& pprop : domain.pprops) {
            if (pprop.action != action)
                continue;
            if (pprop.condition)
                throw std::logic_error("oracle handles unconditional plans only");
            if (!pprop.instant || *pprop.instant == instant)
                return Probability{ 1 };
        }
        return Probability{};
    }
    for (const auto& oprop : domain.narrative)
        if (oprop.action == action && oprop.instant == instant)
            return oprop.probability;
    return Probability{};
}

/// Every path up to `last`, with occurrences at `last` included.
void walk(const Domain& domain, Instant last, const std::function<void(const Path&, const Probability&)>& visit)
{
    const std::size_t actions = domain.actions().size();
    Path path;
    std::function<void(const Probability&)> step = [&](const Probability& weight) {
        const Instant now = domain.origin + static_cast<Instant>(path.states.size()) - 1;
        const State state = path.states.back();
        for (std::uint32_t mask = 0; mask < (1U << actions); ++mask) {
            std::vector<bool> occurs(actions);
            Probability w = weight;
            for (ActionId a = 0; a < actions; ++a) {
                occurs[a] = ((mask >> a) & 1U) != 0;
                const Probability p = occurrence_probability(domain, a, now);
                w *= occurs[a] ? p : Probability{ 1 } - p;
            }
            if (w.is_zero())
                continue;
            path.occurs.push_back(occurs);
            if (now == last) {
                visit(path, w);
            } else {
                const CProp* match = nullptr;
                for (const auto& cprop : domain.cprops) {
                    if (!condition_holds(cprop.condition, state, occurs))
                        continue;
                    if (match != nullptr)
                        throw std::logic_error("oracle found two matching c-propositions");
                    match = &cprop;
                }
                if (match == nullptr) {
                    path.states.push_back(state);
                    step(w);
                    path.states.pop_back();
                } else {
                    for (const auto& outcome : match->outcomes) {
                        State next = state;
                        for (const auto& literal : outcome.effect)
                            next.set(literal);
                        path.states.push_back(next);
                        step(w * outcome.probability);
                        path.states.pop_back();
                    }
                }
            }
            path.occurs.pop_back();
        }
    };
    for (const auto& initial : domain.initial.outcomes) {
        if (initial.probability.is_zero())
            continue;
        path.states = { initial.state };
        step(initial.probability);
    }
}

bool evaluate(const Formula& formula, const Domain& domain, const Path& path)
{
    switch (formula.kind()) {
    case Formula::Kind::negation:
        return !evaluate(formula.operands()[0], domain, path);
    case Formula::Kind::conjunction:
        for (const auto& operand : formula.operands())
            if (!evaluate(operand, domain, path))
                return false;
        return true;
    case Formula::Kind::disjunction:
        for (const auto& operand : formula.operands())
            if (evaluate(operand, domain, path))
                return true;
        return false;
    case Formula::Kind::atom:
        break;
    }
    const auto& atom = formula.atom_value();
    const std::size_t index = *atom.instant - domain.origin;
    if (const auto fluent = domain.find_fluent(atom.name)) {
        const std::string value = atom.value.value_or("true");
        return domain.fluent(*fluent).values[path.states.at(index)[*fluent]] == value;
    }
    const auto action = domain.find_action(atom.name);
    if (!action)
        throw std::logic_error("oracle: unknown name " + atom.name);
    return path.occurs.at(index)[*action];
}

} // namespace

Probability oracle_query(const Domain& domain, const Formula& formula)
{
    const auto instants = formula.instants();
    const Instant last = instants.empty() ? domain.origin : *instants.rbegin();
    Probability total;
    walk(domain, last, [&](const Path& path, const Probability& weight) {
        if (evaluate(formula, domain, path))
            total += weight;
    });
    return total;
}

std::vector<std::pair<State, Probability>> oracle_distribution(const Domain& domain, Instant instant)
{
    std::map<State, Probability> mass;
    walk(domain, instant, [&](const Path& path, const Probability& weight) { mass[path.states.back()] += weight; });
    std::vector<std::pair<State, Probability>> result;
    for (auto& [state, p] : mass)
        if (!p.is_zero())
            result.emplace_back(state, p);
    return result;
}

std::size_t oracle_world_count(const Domain& domain)
{
    std::size_t count = 0;
    walk(domain, domain.horizon, [&](const Path&, const Probability&) { ++count; });
    return count;
}

} // namespace pec::testing
