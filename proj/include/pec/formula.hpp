#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pec
{

using Instant = std::uint32_t;

/// Boolean combination of named literals.
///
/// Atoms refer to fluents or actions by name, so a formula can be built and
/// printed without a domain; engines bind it against a domain before use
/// (see `bind_query` / `bind_condition` in core.hpp). Atoms carry an instant
/// in queries and none in belief conditions of p-propositions.
///
/// `true` is the empty conjunction and `false` the empty disjunction.
class Formula
{
public:
    enum class Kind
    {
        atom,
        negation,
        conjunction,
        disjunction
    };

    struct Atom
    {
        std::string name;
        std::optional<std::string> value; // `F=v`; absent means `true` for booleans, `occurred` for actions
        std::optional<Instant> instant;

        bool operator==(const Atom&) const = default;
    };

    Formula(); // true

    static Formula top();
    static Formula bottom();
    static Formula atom(Atom value);
    static Formula atom(std::string name, std::optional<Instant> instant);
    static Formula negation(Formula operand);
    static Formula conjunction(std::vector<Formula> operands);
    static Formula disjunction(std::vector<Formula> operands);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const Atom& atom_value() const;
    [[nodiscard]] std::span<const Formula> operands() const;

    [[nodiscard]] bool is_top() const;
    [[nodiscard]] bool is_bottom() const;

    [[nodiscard]] std::set<Instant> instants() const;
    [[nodiscard]] std::optional<Instant> max_instant() const;
    [[nodiscard]] std::optional<Instant> min_instant() const;

    /// Concrete syntax with minimal parentheses: `!` binds tighter than `&`, `&` tighter than `|`.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Formula& lhs, const Formula& rhs);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& operand);
Formula operator&&(const Formula& lhs, const Formula& rhs);
Formula operator||(const Formula& lhs, const Formula& rhs);

} // namespace pec
