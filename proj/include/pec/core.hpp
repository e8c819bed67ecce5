#pragma once

#include "pec/domain.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pec
{

inline constexpr std::uint64_t default_state_cap = std::uint64_t{ 1 } << 20;

/// Cartesian product of all value sets in canonical order (first fluent most significant).
/// Throws ResourceLimitError when the product exceeds `cap`.
std::vector<State> enumerate_states(const Domain& domain, std::uint64_t cap = default_state_cap);

/// Frame behaviour: mentioned fluents take the effect's value, the rest persist.
State apply_effect(State state, std::span<const FluentLiteral> effect);

/// The unique c-proposition whose condition holds, or nullptr (pure persistence).
/// Throws AmbiguousMatchError if two match.
const CProp* matching_cprop(const Domain& domain, const State& state, const OccurrenceSet& occurrences);

/// Successor distribution of one transition: the matching c-proposition's
/// outcomes with equal successor states merged, sorted by state. Persistence
/// (probability 1) when nothing matches.
std::vector<std::pair<State, Probability>> successors(const Domain& domain, const State& state,
                                                      const OccurrenceSet& occurrences);

/// A formula resolved against a domain, ready for repeated evaluation.
class BoundFormula
{
public:
    enum class Kind : std::uint8_t
    {
        fluent,
        action,
        negation,
        conjunction,
        disjunction
    };

    struct Node
    {
        Kind kind;
        std::uint32_t subject = 0; // FluentId or ActionId
        ValueId value = 0;
        Instant instant = 0;
        std::vector<std::uint32_t> operands; // indices into nodes_
    };

    [[nodiscard]] bool evaluate(const World& world) const;
    /// For instant-free formulas over fluents (belief conditions).
    [[nodiscard]] bool evaluate(const State& state) const;

    [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }

private:
    friend BoundFormula bind(const Formula&, const Domain&, bool);
    [[nodiscard]] bool eval(std::uint32_t index, const World* world, const State* state) const;

    std::vector<Node> nodes_; // root is the last node
};

/// Query formula: every atom must carry an instant. Throws DomainError on unknown names.
BoundFormula bind_query(const Formula& formula, const Domain& domain);

/// Belief condition: fluent atoms only, no instants. Throws DomainError otherwise.
BoundFormula bind_condition(const Formula& formula, const Domain& domain);

/// Convenience wrapper around bind_query + evaluate.
bool evaluate_iformula(const Formula& formula, const Domain& domain, const World& world);

} // namespace pec
