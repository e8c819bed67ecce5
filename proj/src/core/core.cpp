#include "pec/core.hpp"

#include "pec/error.hpp"

#include <algorithm>

namespace pec
{

std::vector<State> enumerate_states(const Domain& domain, std::uint64_t cap)
{
    const std::uint64_t count = domain.state_count();
    if (count > cap)
        throw ResourceLimitError("state space has " + std::to_string(count) + " states, cap is " +
                                 std::to_string(cap));

    const auto& fluents = domain.fluents();
    std::vector<State> states;
    states.reserve(count);
    std::vector<ValueId> digits(fluents.size(), 0);
    for (std::uint64_t n = 0; n < count; ++n) {
        states.emplace_back(digits);
        // Increment the mixed-radix counter, least significant fluent last.
        for (std::size_t f = fluents.size(); f-- > 0;) {
            if (++digits[f] < fluents[f].values.size())
                break;
            digits[f] = 0;
        }
    }
    return states;
}

State apply_effect(State state, std::span<const FluentLiteral> effect)
{
    for (const auto& literal : effect)
        state.set(literal);
    return state;
}

const CProp* matching_cprop(const Domain& domain, const State& state, const OccurrenceSet& occurrences)
{
    const CProp* match = nullptr;
    for (const auto& cprop : domain.cprops) {
        if (!cprop.condition.holds(state, occurrences))
            continue;
        if (match != nullptr)
            throw AmbiguousMatchError("ambiguous causal match in state " + domain.describe(state));
        match = &cprop;
    }
    return match;
}

std::vector<std::pair<State, Probability>> successors(const Domain& domain, const State& state,
                                                      const OccurrenceSet& occurrences)
{
    std::vector<std::pair<State, Probability>> result;
    const CProp* cprop = matching_cprop(domain, state, occurrences);
    if (cprop == nullptr) {
        result.emplace_back(state, Probability{ 1 });
        return result;
    }
    for (const auto& outcome : cprop->outcomes) {
        State next = apply_effect(state, outcome.effect);
        auto it = std::find_if(result.begin(), result.end(), [&](const auto& entry) { return entry.first == next; });
        if (it == result.end())
            result.emplace_back(std::move(next), outcome.probability);
        else
            it->second += outcome.probability;
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return result;
}

namespace
{

struct Binder
{
    const Domain& domain;
    bool condition_mode;
    std::vector<BoundFormula::Node>& nodes;

    std::uint32_t bind(const Formula& formula)
    {
        BoundFormula::Node node{};
        switch (formula.kind()) {
        case Formula::Kind::atom: bind_atom(formula.atom_value(), node); break;
        case Formula::Kind::negation:
            node.kind = BoundFormula::Kind::negation;
            node.operands.push_back(bind(formula.operands().front()));
            break;
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction:
            node.kind = formula.kind() == Formula::Kind::conjunction ? BoundFormula::Kind::conjunction
                                                                     : BoundFormula::Kind::disjunction;
            for (const auto& operand : formula.operands())
                node.operands.push_back(bind(operand));
            break;
        }
        nodes.push_back(std::move(node));
        return static_cast<std::uint32_t>(nodes.size() - 1);
    }

    void bind_atom(const Formula::Atom& atom, BoundFormula::Node& node)
    {
        if (condition_mode && atom.instant)
            throw DomainError("belief condition atom '" + atom.name + "' must not carry an instant");
        if (!condition_mode && !atom.instant)
            throw DomainError("query atom '" + atom.name + "' is missing an instant annotation");
        node.instant = atom.instant.value_or(0);

        if (auto fluent = domain.find_fluent(atom.name)) {
            const auto& decl = domain.fluent(*fluent);
            node.kind = BoundFormula::Kind::fluent;
            node.subject = *fluent;
            if (atom.value) {
                auto value = domain.find_value(*fluent, *atom.value);
                if (!value)
                    throw DomainError("fluent '" + atom.name + "' has no value '" + *atom.value + "'");
                node.value = *value;
            } else {
                if (!decl.is_boolean())
                    throw DomainError("fluent '" + atom.name + "' is not boolean; write " + atom.name + "=value");
                node.value = *domain.find_value(*fluent, true_value);
            }
            return;
        }
        if (auto action = domain.find_action(atom.name)) {
            if (condition_mode)
                throw DomainError("belief condition mentions action '" + atom.name + "'");
            if (atom.value)
                throw DomainError("action '" + atom.name + "' cannot take a value");
            node.kind = BoundFormula::Kind::action;
            node.subject = *action;
            return;
        }
        throw DomainError("undeclared name '" + atom.name + "'");
    }
};

} // namespace

BoundFormula bind(const Formula& formula, const Domain& domain, bool condition_mode)
{
    BoundFormula result;
    Binder{ domain, condition_mode, result.nodes_ }.bind(formula);
    return result;
}

BoundFormula bind_query(const Formula& formula, const Domain& domain)
{
    return bind(formula, domain, false);
}

BoundFormula bind_condition(const Formula& formula, const Domain& domain)
{
    return bind(formula, domain, true);
}

bool BoundFormula::eval(std::uint32_t index, const World* world, const State* state) const
{
    const Node& node = nodes_[index];
    switch (node.kind) {
    case Kind::fluent: {
        const State& at = world != nullptr ? world->at(node.instant).state : *state;
        return at[node.subject] == node.value;
    }
    case Kind::action:
        return world->at(node.instant).occurrences.contains(node.subject);
    case Kind::negation: return !eval(node.operands.front(), world, state);
    case Kind::conjunction:
        for (auto operand : node.operands)
            if (!eval(operand, world, state))
                return false;
        return true;
    case Kind::disjunction:
        for (auto operand : node.operands)
            if (eval(operand, world, state))
                return true;
        return false;
    }
    return false;
}

bool BoundFormula::evaluate(const World& world) const
{
    return eval(static_cast<std::uint32_t>(nodes_.size() - 1), &world, nullptr);
}

bool BoundFormula::evaluate(const State& state) const
{
    return eval(static_cast<std::uint32_t>(nodes_.size() - 1), nullptr, &state);
}

bool evaluate_iformula(const Formula& formula, const Domain& domain, const World& world)
{
    return bind_query(formula, domain).evaluate(world);
}

} // namespace pec
