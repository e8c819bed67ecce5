#pragma once

#include "pec/formula.hpp"
#include "pec/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pec
{

using FluentId = std::uint32_t;
using ValueId = std::uint16_t;
using ActionId = std::uint32_t;

inline constexpr std::string_view true_value = "true";
inline constexpr std::string_view false_value = "false";

struct FluentDecl
{
    std::string name;
    std::vector<std::string> values;

    /// Exactly the values `true` and `false`, in either order.
    [[nodiscard]] bool is_boolean() const;
    bool operator==(const FluentDecl&) const = default;
};

struct FluentLiteral
{
    FluentId fluent;
    ValueId value;

    auto operator<=>(const FluentLiteral&) const = default;
};

enum class ActionKind
{
    agent,
    environment
};

struct ActionDecl
{
    std::string name;
    ActionKind kind;

    bool operator==(const ActionDecl&) const = default;
};

struct ActionLiteral
{
    ActionId action;
    bool occurred;

    auto operator<=>(const ActionLiteral&) const = default;
};

/// Total assignment of a value to every declared fluent, indexed by FluentId.
///
/// Fluents are kept sorted by name inside a Domain and values keep their
/// declaration order, so the lexicographic order of the value vectors is the
/// canonical state order.
class State
{
public:
    State() = default;
    explicit State(std::vector<ValueId> values) : values_{ std::move(values) } {}

    [[nodiscard]] ValueId operator[](FluentId fluent) const { return values_[fluent]; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::span<const ValueId> values() const { return values_; }

    [[nodiscard]] bool satisfies(FluentLiteral literal) const { return values_[literal.fluent] == literal.value; }
    void set(FluentLiteral literal) { values_[literal.fluent] = literal.value; }

    auto operator<=>(const State&) const = default;

private:
    std::vector<ValueId> values_;
};

/// Sorted set of the actions occurring at one instant.
class OccurrenceSet
{
public:
    OccurrenceSet() = default;
    explicit OccurrenceSet(std::vector<ActionId> actions);

    [[nodiscard]] bool contains(ActionId action) const;
    void insert(ActionId action);
    [[nodiscard]] std::span<const ActionId> actions() const { return actions_; }
    [[nodiscard]] bool empty() const { return actions_.empty(); }

    auto operator<=>(const OccurrenceSet&) const = default;

private:
    std::vector<ActionId> actions_;
};

struct InitialOutcome
{
    State state;
    Probability probability;

    bool operator==(const InitialOutcome&) const = default;
};

/// `initially-one-of`.
struct IProp
{
    std::vector<InitialOutcome> outcomes;

    bool operator==(const IProp&) const = default;
};

/// Conjunction of fluent and action literals; absent actions are false (closed world).
struct Condition
{
    std::vector<FluentLiteral> fluents;
    std::vector<ActionLiteral> actions;

    [[nodiscard]] bool holds(const State& state, const OccurrenceSet& occurrences) const;
    [[nodiscard]] bool consistent() const;
    /// Some (state, occurrences) satisfies both conditions.
    [[nodiscard]] bool compatible_with(const Condition& other) const;

    bool operator==(const Condition&) const = default;
};

struct Outcome
{
    std::vector<FluentLiteral> effect;
    Probability probability;

    bool operator==(const Outcome&) const = default;
};

/// `condition causes-one-of {(effect, p), ...}`.
struct CProp
{
    Condition condition;
    std::vector<Outcome> outcomes;

    bool operator==(const CProp&) const = default;
};

/// `action occurs-at instant with-prob p`.
struct OProp
{
    ActionId action;
    Instant instant;
    Probability probability;

    bool operator==(const OProp&) const = default;
};

/// `if-believes (formula, [lower, upper])` over fluent literals without instants.
struct BeliefCondition
{
    Formula formula;
    Probability lower;
    Probability upper;

    [[nodiscard]] bool admits(const Probability& belief) const { return lower <= belief && belief <= upper; }
    bool operator==(const BeliefCondition&) const = default;
};

/// `action performed-at (instant | every-instant) [if-believes ...]`.
struct PProp
{
    ActionId action;
    std::optional<Instant> instant; // nullopt: every instant of the timeline
    std::optional<BeliefCondition> condition;

    [[nodiscard]] bool scheduled_at(Instant at) const { return !instant || *instant == at; }
    bool operator==(const PProp&) const = default;
};

/// `action senses fluent with-accuracies ((a, 1-a), (b, 1-b))`.
///
/// Rows are the actual fluent value (true, false); columns the observed
/// result (positive, negative).
struct SProp
{
    ActionId action;
    FluentId fluent;
    std::array<std::array<Probability, 2>, 2> accuracies;

    [[nodiscard]] const Probability& true_positive_rate() const { return accuracies[0][0]; }
    [[nodiscard]] const Probability& false_positive_rate() const { return accuracies[1][0]; }
    bool operator==(const SProp&) const = default;
};

/// A complete domain description.
///
/// Fluents are fixed at construction and sorted by name; actions keep their
/// insertion order. Propositions reference both by index.
class Domain
{
public:
    Domain() = default;
    explicit Domain(std::vector<FluentDecl> fluents);

    [[nodiscard]] const std::vector<FluentDecl>& fluents() const { return fluents_; }
    [[nodiscard]] const std::vector<ActionDecl>& actions() const { return actions_; }
    [[nodiscard]] const FluentDecl& fluent(FluentId id) const { return fluents_.at(id); }
    [[nodiscard]] const ActionDecl& action(ActionId id) const { return actions_.at(id); }

    ActionId add_action(std::string name, ActionKind kind);

    [[nodiscard]] std::optional<FluentId> find_fluent(std::string_view name) const;
    [[nodiscard]] std::optional<ActionId> find_action(std::string_view name) const;
    [[nodiscard]] std::optional<ValueId> find_value(FluentId fluent, std::string_view value) const;

    /// Throwing lookups for programmatic construction.
    [[nodiscard]] FluentId fluent_id(std::string_view name) const;
    [[nodiscard]] ActionId action_id(std::string_view name) const;
    [[nodiscard]] FluentLiteral literal(std::string_view fluent, std::string_view value) const;
    /// Boolean literal: `F` when `holds`, `!F` otherwise.
    [[nodiscard]] FluentLiteral literal(std::string_view fluent, bool holds = true) const;

    /// Product of value-set cardinalities, saturating at UINT64_MAX.
    [[nodiscard]] std::uint64_t state_count() const;

    [[nodiscard]] std::string describe(FluentLiteral literal) const;
    [[nodiscard]] std::string describe(const State& state) const;

    [[nodiscard]] std::vector<OProp> narrative_at(Instant instant) const;
    [[nodiscard]] bool contains(Instant instant) const { return origin <= instant && instant <= horizon; }

    Instant origin = 0;
    Instant horizon = 0;
    IProp initial;
    std::vector<CProp> cprops;
    std::vector<PProp> pprops;
    std::vector<SProp> sprops;
    std::vector<OProp> narrative;

    bool operator==(const Domain&) const = default;

private:
    std::vector<FluentDecl> fluents_;
    std::vector<ActionDecl> actions_;
};

/// One instant of a world.
struct Step
{
    State state;
    OccurrenceSet occurrences;

    auto operator<=>(const Step&) const = default;
};

/// A total evolution over [origin, origin + steps.size() - 1].
struct World
{
    Instant origin = 0;
    std::vector<Step> steps;

    [[nodiscard]] const Step& at(Instant instant) const { return steps.at(instant - origin); }
    [[nodiscard]] Instant last() const { return origin + static_cast<Instant>(steps.size()) - 1; }
    [[nodiscard]] bool covers(Instant instant) const { return instant >= origin && instant - origin < steps.size(); }

    auto operator<=>(const World&) const = default;
};

} // namespace pec
