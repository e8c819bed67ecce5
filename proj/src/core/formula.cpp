#include "pec/formula.hpp"

#include <cassert>

namespace pec
{

struct Formula::Node
{
    Kind kind;
    Atom atom;
    std::vector<Formula> operands;
};

Formula::Formula() : Formula{ top() } {}

Formula::Formula(std::shared_ptr<const Node> node) : node_{ std::move(node) } {}

Formula Formula::top()
{
    static const auto node = std::make_shared<const Node>(Node{ Kind::conjunction, {}, {} });
    return Formula{ node };
}

Formula Formula::bottom()
{
    static const auto node = std::make_shared<const Node>(Node{ Kind::disjunction, {}, {} });
    return Formula{ node };
}

Formula Formula::atom(Atom value)
{
    return Formula{ std::make_shared<const Node>(Node{ Kind::atom, std::move(value), {} }) };
}

Formula Formula::atom(std::string name, std::optional<Instant> instant)
{
    return atom(Atom{ std::move(name), std::nullopt, instant });
}

Formula Formula::negation(Formula operand)
{
    return Formula{ std::make_shared<const Node>(Node{ Kind::negation, {}, { std::move(operand) } }) };
}

Formula Formula::conjunction(std::vector<Formula> operands)
{
    if (operands.size() == 1)
        return std::move(operands.front());
    return Formula{ std::make_shared<const Node>(Node{ Kind::conjunction, {}, std::move(operands) }) };
}

Formula Formula::disjunction(std::vector<Formula> operands)
{
    if (operands.size() == 1)
        return std::move(operands.front());
    return Formula{ std::make_shared<const Node>(Node{ Kind::disjunction, {}, std::move(operands) }) };
}

Formula::Kind Formula::kind() const
{
    return node_->kind;
}

const Formula::Atom& Formula::atom_value() const
{
    assert(node_->kind == Kind::atom);
    return node_->atom;
}

std::span<const Formula> Formula::operands() const
{
    return node_->operands;
}

bool Formula::is_top() const
{
    return node_->kind == Kind::conjunction && node_->operands.empty();
}

bool Formula::is_bottom() const
{
    return node_->kind == Kind::disjunction && node_->operands.empty();
}

std::set<Instant> Formula::instants() const
{
    std::set<Instant> result;
    if (node_->kind == Kind::atom) {
        if (node_->atom.instant)
            result.insert(*node_->atom.instant);
        return result;
    }
    for (const auto& operand : node_->operands)
        result.merge(operand.instants());
    return result;
}

std::optional<Instant> Formula::max_instant() const
{
    const auto all = instants();
    if (all.empty())
        return std::nullopt;
    return *all.rbegin();
}

std::optional<Instant> Formula::min_instant() const
{
    const auto all = instants();
    if (all.empty())
        return std::nullopt;
    return *all.begin();
}

namespace
{

int precedence(const Formula& formula)
{
    if (formula.is_top() || formula.is_bottom())
        return 4;
    switch (formula.kind()) {
    case Formula::Kind::atom: return 4;
    case Formula::Kind::negation: return 3;
    case Formula::Kind::conjunction: return 2;
    case Formula::Kind::disjunction: return 1;
    }
    return 0;
}

std::string render(const Formula& formula, int context)
{
    std::string text;
    if (formula.is_top()) {
        text = "true";
    } else if (formula.is_bottom()) {
        text = "false";
    } else {
        switch (formula.kind()) {
        case Formula::Kind::atom: {
            const auto& atom = formula.atom_value();
            text = atom.name;
            if (atom.value)
                text += "=" + *atom.value;
            if (atom.instant)
                text += "@" + std::to_string(*atom.instant);
            break;
        }
        case Formula::Kind::negation:
            text = "!" + render(formula.operands().front(), 3);
            break;
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction: {
            const int own = precedence(formula);
            const char* separator = formula.kind() == Formula::Kind::conjunction ? " & " : " | ";
            bool first = true;
            for (const auto& operand : formula.operands()) {
                if (!first)
                    text += separator;
                // Nested same-kind operands keep their grouping.
                text += render(operand, own + 1);
                first = false;
            }
            break;
        }
        }
    }
    if (precedence(formula) < context)
        return "(" + text + ")";
    return text;
}

} // namespace

std::string Formula::to_string() const
{
    return render(*this, 0);
}

bool operator==(const Formula& lhs, const Formula& rhs)
{
    if (lhs.node_ == rhs.node_)
        return true;
    if (lhs.node_->kind != rhs.node_->kind)
        return false;
    if (lhs.node_->kind == Formula::Kind::atom)
        return lhs.node_->atom == rhs.node_->atom;
    return lhs.node_->operands == rhs.node_->operands;
}

Formula operator!(const Formula& operand)
{
    return Formula::negation(operand);
}

Formula operator&&(const Formula& lhs, const Formula& rhs)
{
    return Formula::conjunction({ lhs, rhs });
}

Formula operator||(const Formula& lhs, const Formula& rhs)
{
    return Formula::disjunction({ lhs, rhs });
}

} // namespace pec
