#include "pec/domain.hpp"

#include "pec/error.hpp"

#include <algorithm>
#include <limits>

namespace pec
{

bool FluentDecl::is_boolean() const
{
    if (values.size() != 2)
        return false;
    return (values[0] == true_value && values[1] == false_value) ||
           (values[0] == false_value && values[1] == true_value);
}

OccurrenceSet::OccurrenceSet(std::vector<ActionId> actions) : actions_{ std::move(actions) }
{
    std::sort(actions_.begin(), actions_.end());
    actions_.erase(std::unique(actions_.begin(), actions_.end()), actions_.end());
}

bool OccurrenceSet::contains(ActionId action) const
{
    return std::binary_search(actions_.begin(), actions_.end(), action);
}

void OccurrenceSet::insert(ActionId action)
{
    const auto it = std::lower_bound(actions_.begin(), actions_.end(), action);
    if (it == actions_.end() || *it != action)
        actions_.insert(it, action);
}

bool Condition::holds(const State& state, const OccurrenceSet& occurrences) const
{
    for (const auto& literal : fluents)
        if (!state.satisfies(literal))
            return false;
    for (const auto& literal : actions)
        if (occurrences.contains(literal.action) != literal.occurred)
            return false;
    return true;
}

bool Condition::consistent() const
{
    return compatible_with(Condition{});
}

bool Condition::compatible_with(const Condition& other) const
{
    std::vector<FluentLiteral> all_fluents = fluents;
    all_fluents.insert(all_fluents.end(), other.fluents.begin(), other.fluents.end());
    std::sort(all_fluents.begin(), all_fluents.end());
    for (std::size_t i = 1; i < all_fluents.size(); ++i)
        if (all_fluents[i].fluent == all_fluents[i - 1].fluent && all_fluents[i].value != all_fluents[i - 1].value)
            return false;

    std::vector<ActionLiteral> all_actions = actions;
    all_actions.insert(all_actions.end(), other.actions.begin(), other.actions.end());
    std::sort(all_actions.begin(), all_actions.end());
    for (std::size_t i = 1; i < all_actions.size(); ++i)
        if (all_actions[i].action == all_actions[i - 1].action &&
            all_actions[i].occurred != all_actions[i - 1].occurred)
            return false;
    return true;
}

Domain::Domain(std::vector<FluentDecl> fluents) : fluents_{ std::move(fluents) }
{
    std::sort(fluents_.begin(), fluents_.end(),
              [](const FluentDecl& lhs, const FluentDecl& rhs) { return lhs.name < rhs.name; });
    for (std::size_t i = 0; i < fluents_.size(); ++i) {
        if (fluents_[i].values.empty())
            throw DomainError("fluent '" + fluents_[i].name + "' has an empty value set");
        if (i > 0 && fluents_[i].name == fluents_[i - 1].name)
            throw DomainError("fluent '" + fluents_[i].name + "' declared twice");
    }
}

ActionId Domain::add_action(std::string name, ActionKind kind)
{
    if (find_action(name))
        throw DomainError("action '" + name + "' declared twice");
    if (find_fluent(name))
        throw DomainError("'" + name + "' is already a fluent");
    actions_.push_back(ActionDecl{ std::move(name), kind });
    return static_cast<ActionId>(actions_.size() - 1);
}

std::optional<FluentId> Domain::find_fluent(std::string_view name) const
{
    const auto it = std::lower_bound(fluents_.begin(), fluents_.end(), name,
                                     [](const FluentDecl& decl, std::string_view key) { return decl.name < key; });
    if (it == fluents_.end() || it->name != name)
        return std::nullopt;
    return static_cast<FluentId>(it - fluents_.begin());
}

std::optional<ActionId> Domain::find_action(std::string_view name) const
{
    for (std::size_t i = 0; i < actions_.size(); ++i)
        if (actions_[i].name == name)
            return static_cast<ActionId>(i);
    return std::nullopt;
}

std::optional<ValueId> Domain::find_value(FluentId fluent, std::string_view value) const
{
    const auto& values = fluents_.at(fluent).values;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == value)
            return static_cast<ValueId>(i);
    return std::nullopt;
}

FluentId Domain::fluent_id(std::string_view name) const
{
    if (auto id = find_fluent(name))
        return *id;
    throw DomainError("undeclared fluent '" + std::string{ name } + "'");
}

ActionId Domain::action_id(std::string_view name) const
{
    if (auto id = find_action(name))
        return *id;
    throw DomainError("undeclared action '" + std::string{ name } + "'");
}

FluentLiteral Domain::literal(std::string_view fluent, std::string_view value) const
{
    const FluentId id = fluent_id(fluent);
    if (auto v = find_value(id, value))
        return FluentLiteral{ id, *v };
    throw DomainError("fluent '" + std::string{ fluent } + "' has no value '" + std::string{ value } + "'");
}

FluentLiteral Domain::literal(std::string_view fluent, bool holds) const
{
    return literal(fluent, holds ? true_value : false_value);
}

std::uint64_t Domain::state_count() const
{
    std::uint64_t count = 1;
    for (const auto& decl : fluents_) {
        const std::uint64_t size = decl.values.size();
        if (count > std::numeric_limits<std::uint64_t>::max() / size)
            return std::numeric_limits<std::uint64_t>::max();
        count *= size;
    }
    return count;
}

std::string Domain::describe(FluentLiteral literal) const
{
    const auto& decl = fluents_.at(literal.fluent);
    const auto& value = decl.values.at(literal.value);
    if (decl.is_boolean())
        return value == true_value ? decl.name : "!" + decl.name;
    return decl.name + "=" + value;
}

std::string Domain::describe(const State& state) const
{
    std::string text = "{";
    for (FluentId f = 0; f < state.size(); ++f) {
        if (f > 0)
            text += ", ";
        text += describe(FluentLiteral{ f, state[f] });
    }
    return text + "}";
}

std::vector<OProp> Domain::narrative_at(Instant instant) const
{
    std::vector<OProp> result;
    for (const auto& oprop : narrative)
        if (oprop.instant == instant)
            result.push_back(oprop);
    return result;
}

} // namespace pec
