#include "pec/dsl.hpp"

#include <sstream>

namespace pec::dsl
{

namespace
{

std::string literal_set(const Domain& domain, const std::vector<FluentLiteral>& literals,
                        const std::vector<ActionLiteral>& actions = {})
{
    std::string text = "{";
    bool first = true;
    for (const auto& literal : literals) {
        text += first ? "" : ", ";
        text += domain.describe(literal);
        first = false;
    }
    for (const auto& literal : actions) {
        text += first ? "" : ", ";
        text += (literal.occurred ? "" : "!") + domain.action(literal.action).name;
        first = false;
    }
    return text + "}";
}

std::string state_set(const Domain& domain, const State& state)
{
    std::vector<FluentLiteral> literals;
    for (FluentId f = 0; f < state.size(); ++f)
        literals.push_back(FluentLiteral{ f, state[f] });
    return literal_set(domain, literals);
}

} // namespace

std::string serialize_domain(const Domain& domain)
{
    std::ostringstream out;
    out << "instants " << domain.origin << ".." << domain.horizon << "\n\n";

    for (const auto& fluent : domain.fluents()) {
        out << fluent.name << " takes-values {";
        for (std::size_t v = 0; v < fluent.values.size(); ++v)
            out << (v > 0 ? ", " : "") << fluent.values[v];
        out << "}\n";
    }
    if (!domain.actions().empty())
        out << '\n';
    for (const auto& action : domain.actions())
        out << (action.kind == ActionKind::agent ? "agent-action " : "environment-action ") << action.name << '\n';

    if (!domain.initial.outcomes.empty()) {
        out << "\ninitially-one-of {";
        bool first = true;
        for (const auto& outcome : domain.initial.outcomes) {
            out << (first ? "" : ", ") << '(' << state_set(domain, outcome.state) << ", " << outcome.probability << ')';
            first = false;
        }
        out << "}\n";
    }

    if (!domain.cprops.empty())
        out << '\n';
    for (const auto& cprop : domain.cprops) {
        out << literal_set(domain, cprop.condition.fluents, cprop.condition.actions) << " causes-one-of {";
        bool first = true;
        for (const auto& outcome : cprop.outcomes) {
            out << (first ? "" : ", ") << '(' << literal_set(domain, outcome.effect) << ", " << outcome.probability
                << ')';
            first = false;
        }
        out << "}\n";
    }

    if (!domain.sprops.empty())
        out << '\n';
    for (const auto& sprop : domain.sprops) {
        const auto& m = sprop.accuracies;
        out << domain.action(sprop.action).name << " senses " << domain.fluent(sprop.fluent).name
            << " with-accuracies ((" << m[0][0] << ", " << m[0][1] << "), (" << m[1][0] << ", " << m[1][1] << "))\n";
    }

    if (!domain.pprops.empty())
        out << '\n';
    for (const auto& pprop : domain.pprops) {
        out << domain.action(pprop.action).name << " performed-at ";
        if (pprop.instant)
            out << *pprop.instant;
        else
            out << "every-instant";
        if (pprop.condition)
            out << " if-believes (" << pprop.condition->formula.to_string() << ", [" << pprop.condition->lower << ", "
                << pprop.condition->upper << "])";
        out << '\n';
    }

    if (!domain.narrative.empty())
        out << '\n';
    for (const auto& oprop : domain.narrative)
        out << domain.action(oprop.action).name << " occurs-at " << oprop.instant << " with-prob " << oprop.probability
            << '\n';
    return out.str();
}

} // namespace pec::dsl
