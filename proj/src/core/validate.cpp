#include "pec/validate.hpp"

#include "pec/core.hpp"
#include "pec/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pec
{

std::size_t ValidationReport::error_count() const
{
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [](const Issue& i) { return i.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const
{
    return issues.size() - error_count();
}

std::size_t ValidationReport::count(std::string_view code) const
{
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [&](const Issue& i) { return i.code == code; }));
}

namespace
{

class Checker
{
public:
    explicit Checker(const Domain& domain) : domain_{ domain } {}

    ValidationReport run()
    {
        if (domain_.horizon < domain_.origin)
            error("invalid-timeline", "horizon precedes the timeline origin");
        check_initial();
        check_cprops();
        check_oprops();
        check_pprops();
        check_sprops();
        return std::move(report_);
    }

private:
    void error(std::string code, std::string message)
    {
        report_.issues.push_back(Issue{ Severity::error, std::move(code), std::move(message) });
    }

    void warning(std::string code, std::string message)
    {
        report_.issues.push_back(Issue{ Severity::warning, std::move(code), std::move(message) });
    }

    bool literal_in_range(FluentLiteral literal) const
    {
        return literal.fluent < domain_.fluents().size() &&
               literal.value < domain_.fluent(literal.fluent).values.size();
    }

    bool literals_in_range(const std::vector<FluentLiteral>& literals, const std::string& where)
    {
        for (const auto& literal : literals) {
            if (!literal_in_range(literal)) {
                error("undeclared-fluent", where + " refers to an undeclared fluent or value");
                return false;
            }
        }
        return true;
    }

    static bool effect_consistent(const std::vector<FluentLiteral>& effect)
    {
        return Condition{ effect, {} }.consistent();
    }

    void check_probability(const Probability& p, const std::string& where, bool allow_zero)
    {
        if (!p.is_probability() || (!allow_zero && p.is_zero()))
            error("invalid-probability", where + ": probability " + p.to_string() + " out of range");
    }

    void check_initial()
    {
        const auto& outcomes = domain_.initial.outcomes;
        if (outcomes.empty()) {
            error("missing-initial", "missing initially-one-of");
            return;
        }
        Probability total;
        std::set<State> seen;
        for (const auto& outcome : outcomes) {
            check_probability(outcome.probability, "initially-one-of", false);
            total += outcome.probability;
            bool complete = outcome.state.size() == domain_.fluents().size();
            for (FluentId f = 0; complete && f < outcome.state.size(); ++f)
                complete = outcome.state[f] < domain_.fluent(f).values.size();
            if (!complete)
                error("incomplete-initial-state", "initially-one-of outcome is not a complete state");
            else if (!seen.insert(outcome.state).second)
                error("duplicate-initial-state",
                      "initially-one-of lists state " + domain_.describe(outcome.state) + " twice");
        }
        if (total != Probability{ 1 })
            error("unnormalized-initial", "initial distribution not normalized (sums to " + total.to_string() + ")");
    }

    void check_cprops()
    {
        const auto& cprops = domain_.cprops;
        for (std::size_t i = 0; i < cprops.size(); ++i) {
            const auto& cprop = cprops[i];
            const std::string where = "c-proposition #" + std::to_string(i + 1);
            if (!literals_in_range(cprop.condition.fluents, where))
                continue;
            bool actions_ok = true;
            for (const auto& literal : cprop.condition.actions)
                actions_ok = actions_ok && literal.action < domain_.actions().size();
            if (!actions_ok) {
                error("undeclared-action", where + " refers to an undeclared action");
                continue;
            }
            if (!cprop.condition.consistent())
                error("inconsistent-condition", where + " has a contradictory condition");
            if (cprop.outcomes.empty())
                error("unnormalized-outcomes", where + " has no outcomes");
            Probability total;
            for (const auto& outcome : cprop.outcomes) {
                check_probability(outcome.probability, where, false);
                total += outcome.probability;
                if (literals_in_range(outcome.effect, where) && !effect_consistent(outcome.effect))
                    error("inconsistent-effect", where + " has an effect assigning two values to one fluent");
            }
            if (!cprop.outcomes.empty() && total != Probability{ 1 })
                error("unnormalized-outcomes", where + " outcome probabilities sum to " + total.to_string());
            if (!reachable(cprop.condition))
                warning("unreachable-cprop", where + " requires an agent action the plan never performs");
        }

        for (std::size_t i = 0; i < cprops.size(); ++i)
            for (std::size_t j = i + 1; j < cprops.size(); ++j)
                if (cprops[i].condition.compatible_with(cprops[j].condition) &&
                    can_co_occur(cprops[i].condition, cprops[j].condition))
                    error("overlapping-cprops", "c-propositions #" + std::to_string(i + 1) + " and #" +
                                                    std::to_string(j + 1) + " can match the same state and occurrences");
    }

    /// Instants at which an action can occur; nullopt means any instant.
    /// Environment actions without o-propositions are expected from a live stream.
    std::optional<std::set<Instant>> occurrence_instants(ActionId action) const
    {
        std::set<Instant> instants;
        if (domain_.action(action).kind == ActionKind::agent) {
            for (const auto& pprop : domain_.pprops) {
                if (pprop.action != action)
                    continue;
                if (!pprop.instant)
                    return std::nullopt;
                instants.insert(*pprop.instant);
            }
            return instants;
        }
        bool mentioned = false;
        for (const auto& oprop : domain_.narrative) {
            if (oprop.action != action)
                continue;
            mentioned = true;
            if (!oprop.probability.is_zero())
                instants.insert(oprop.instant);
        }
        if (!mentioned)
            return std::nullopt;
        return instants;
    }

    /// Some instant admits every positive action literal of both conditions.
    bool can_co_occur(const Condition& a, const Condition& b) const
    {
        std::optional<std::set<Instant>> common;
        for (const auto* condition : { &a, &b })
            for (const auto& literal : condition->actions) {
                if (!literal.occurred)
                    continue;
                auto instants = occurrence_instants(literal.action);
                if (!instants)
                    continue;
                if (common) {
                    std::erase_if(*common, [&](Instant i) { return !instants->contains(i); });
                } else {
                    common = std::move(instants);
                }
            }
        return !common || !common->empty();
    }

    // environment actions may still arrive at runtime, so only the plan is checked
    bool reachable(const Condition& condition) const
    {
        for (const auto& literal : condition.actions) {
            if (!literal.occurred || domain_.action(literal.action).kind != ActionKind::agent)
                continue;
            if (std::none_of(domain_.pprops.begin(), domain_.pprops.end(),
                             [&](const PProp& p) { return p.action == literal.action; }))
                return false;
        }
        return true;
    }

    void check_oprops()
    {
        std::set<std::pair<ActionId, Instant>> seen;
        for (const auto& oprop : domain_.narrative) {
            if (oprop.action >= domain_.actions().size()) {
                error("undeclared-action", "o-proposition refers to an undeclared action");
                continue;
            }
            const auto& name = domain_.action(oprop.action).name;
            const std::string where = name + " occurs-at " + std::to_string(oprop.instant);
            if (domain_.action(oprop.action).kind != ActionKind::environment)
                error("oprop-agent-action", where + ": agent actions cannot appear in o-propositions");
            check_probability(oprop.probability, where, true);
            if (!seen.insert({ oprop.action, oprop.instant }).second)
                error("duplicate-oprop", where + " is declared more than once");
            if (!domain_.contains(oprop.instant))
                warning("outside-horizon", where + " lies outside the timeline");
        }
    }

    void check_pprops()
    {
        for (const auto& pprop : domain_.pprops) {
            if (pprop.action >= domain_.actions().size()) {
                error("undeclared-action", "p-proposition refers to an undeclared action");
                continue;
            }
            const auto& name = domain_.action(pprop.action).name;
            if (domain_.action(pprop.action).kind != ActionKind::agent)
                error("pprop-environment-action", name + ": environment actions cannot appear in p-propositions");
            if (pprop.instant && !domain_.contains(*pprop.instant))
                warning("outside-horizon", name + " performed-at " + std::to_string(*pprop.instant) +
                                               " lies outside the timeline");
            if (!pprop.condition)
                continue;
            const auto& condition = *pprop.condition;
            if (!condition.lower.is_probability() || !condition.upper.is_probability() ||
                condition.upper < condition.lower)
                error("invalid-interval", name + ": belief interval [" + condition.lower.to_string() + ", " +
                                              condition.upper.to_string() + "] is not a valid probability interval");
            try {
                (void)bind_condition(condition.formula, domain_);
            } catch (const DomainError& e) {
                error("undeclared-name", name + ": " + e.what());
            }
        }
    }

    void check_sprops()
    {
        for (const auto& sprop : domain_.sprops) {
            if (sprop.action >= domain_.actions().size() || sprop.fluent >= domain_.fluents().size()) {
                error("undeclared-name", "s-proposition refers to an undeclared action or fluent");
                continue;
            }
            const std::string where = domain_.action(sprop.action).name + " senses " + domain_.fluent(sprop.fluent).name;
            if (!domain_.fluent(sprop.fluent).is_boolean())
                error("sprop-nonboolean", where + ": only boolean fluents can be sensed");
            bool entries_ok = true;
            for (const auto& row : sprop.accuracies) {
                for (const auto& entry : row)
                    entries_ok = entries_ok && entry.is_probability();
                if (row[0] + row[1] != Probability{ 1 })
                    entries_ok = false;
            }
            if (!entries_ok)
                error("invalid-accuracies", where + ": accuracy matrix must be row-stochastic");
        }
    }

    const Domain& domain_;
    ValidationReport report_;
};

} // namespace

ValidationReport validate_domain(const Domain& domain)
{
    return Checker{ domain }.run();
}

} // namespace pec
