#include "random_domain.hpp"

#include "pec/core.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pec::testing
{

namespace
{

std::size_t pick(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>{ 0, n - 1 }(rng);
}

bool coin(Rng& rng, double p = 0.5)
{
    return std::bernoulli_distribution{ p }(rng);
}

std::vector<Probability> random_weights(Rng& rng, std::size_t n)
{
    std::vector<long> raw(n);
    long total = 0;
    for (auto& w : raw) {
        w = static_cast<long>(pick(rng, 4)) + 1;
        total += w;
    }
    std::vector<Probability> result;
    for (const long w : raw)
        result.emplace_back(w, total);
    return result;
}

FluentLiteral random_literal(Rng& rng, const Domain& domain, FluentId fluent)
{
    return { fluent, static_cast<ValueId>(pick(rng, domain.fluent(fluent).values.size())) };
}

std::vector<FluentLiteral> random_effect(Rng& rng, const Domain& domain)
{
    std::vector<FluentLiteral> effect;
    for (FluentId f = 0; f < domain.fluents().size(); ++f)
        if (coin(rng))
            effect.push_back(random_literal(rng, domain, f));
    if (effect.empty())
        effect.push_back(random_literal(rng, domain, static_cast<FluentId>(pick(rng, domain.fluents().size()))));
    return effect;
}

Formula fluent_atom(Rng& rng, const Domain& domain, std::optional<Instant> instant)
{
    const auto f = static_cast<FluentId>(pick(rng, domain.fluents().size()));
    const auto& decl = domain.fluent(f);
    Formula::Atom atom{ decl.name, std::nullopt, instant };
    if (!decl.is_boolean() || coin(rng, 0.25))
        atom.value = decl.values[pick(rng, decl.values.size())];
    return Formula::atom(atom);
}

/// Children of a connective are never the same connective, so printing and
/// re-parsing keeps the structure.
Formula random_formula(Rng& rng, int depth, const std::function<Formula()>& leaf, Formula::Kind parent)
{
    if (depth <= 0 || coin(rng, 0.3))
        return leaf();
    const auto choice = pick(rng, 3);
    if (choice == 0 && parent != Formula::Kind::negation)
        return !random_formula(rng, depth - 1, leaf, Formula::Kind::negation);
    const auto kind = choice == 1 ? Formula::Kind::conjunction : Formula::Kind::disjunction;
    if (kind == parent)
        return leaf();
    std::vector<Formula> operands;
    const std::size_t n = 2 + pick(rng, 2);
    for (std::size_t i = 0; i < n; ++i)
        operands.push_back(random_formula(rng, depth - 1, leaf, kind));
    return kind == Formula::Kind::conjunction ? Formula::conjunction(std::move(operands))
                                              : Formula::disjunction(std::move(operands));
}

} // namespace

Probability random_probability(Rng& rng, bool allow_zero)
{
    static const long denominators[] = { 1, 2, 3, 4, 5, 8, 10 };
    const long den = denominators[pick(rng, std::size(denominators))];
    const long lo = allow_zero ? 0 : 1;
    const long num = std::uniform_int_distribution<long>{ lo, den }(rng);
    return { num, den };
}

Domain random_domain(Rng& rng, const RandomDomainOptions& options)
{
    std::vector<FluentDecl> fluents;
    const std::size_t nf = 1 + pick(rng, options.max_fluents);
    for (std::size_t i = 0; i < nf; ++i) {
        const std::string name = "F" + std::to_string(i);
        if (options.multi_valued && coin(rng, 0.3))
            fluents.push_back({ name, { "lo", "mid", "hi" } });
        else if (coin(rng))
            fluents.push_back({ name, { "true", "false" } });
        else
            fluents.push_back({ name, { "false", "true" } });
    }
    Domain domain{ fluents };
    domain.horizon = 1 + static_cast<Instant>(pick(rng, options.max_horizon));

    const std::size_t na = pick(rng, options.max_actions + 1);
    for (std::size_t i = 0; i < na; ++i) {
        const bool agent = options.agent_actions && coin(rng, 0.3);
        domain.add_action((agent ? "G" : "A") + std::to_string(i), agent ? ActionKind::agent : ActionKind::environment);
    }

    // initial distribution over a random nonempty set of states
    auto states = enumerate_states(domain);
    std::shuffle(states.begin(), states.end(), rng);
    states.resize(1 + pick(rng, std::min<std::size_t>(states.size(), 4)));
    std::sort(states.begin(), states.end());
    const auto weights = random_weights(rng, states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        domain.initial.outcomes.push_back({ states[i], weights[i] });

    const std::size_t attempts = pick(rng, 4);
    for (std::size_t k = 0; k < attempts; ++k) {
        CProp cprop;
        for (FluentId f = 0; f < domain.fluents().size(); ++f)
            if (coin(rng, 0.4))
                cprop.condition.fluents.push_back(random_literal(rng, domain, f));
        for (ActionId a = 0; a < domain.actions().size(); ++a)
            if (const auto mode = pick(rng, 3); mode != 0)
                cprop.condition.actions.push_back({ a, mode == 1 });
        const auto outcome_weights = random_weights(rng, 1 + pick(rng, 3));
        for (const auto& w : outcome_weights)
            cprop.outcomes.push_back({ random_effect(rng, domain), w });
        const bool overlaps = std::any_of(domain.cprops.begin(), domain.cprops.end(), [&](const CProp& other) {
            return other.condition.compatible_with(cprop.condition);
        });
        if (!overlaps)
            domain.cprops.push_back(std::move(cprop));
    }

    for (ActionId a = 0; a < domain.actions().size(); ++a) {
        const Instant last = options.narrative_only_at_origin ? 0 : domain.horizon;
        for (Instant i = 0; i <= last; ++i) {
            if (domain.action(a).kind == ActionKind::agent) {
                if (coin(rng, 0.4))
                    domain.pprops.push_back({ a, i, std::nullopt });
                continue;
            }
            if (coin(rng, 0.7))
                domain.narrative.push_back({ a, i, random_probability(rng) });
        }
        if (domain.action(a).kind == ActionKind::agent && options.belief_pprops && coin(rng)) {
            Probability lo = random_probability(rng);
            Probability hi = random_probability(rng);
            if (hi < lo)
                std::swap(lo, hi);
            std::optional<Instant> when;
            if (coin(rng))
                when = static_cast<Instant>(pick(rng, domain.horizon + 1));
            domain.pprops.push_back({ a, when, BeliefCondition{ random_condition(rng, domain), lo, hi } });
        }
    }

    if (options.sensing) {
        std::vector<FluentId> booleans;
        for (FluentId f = 0; f < domain.fluents().size(); ++f)
            if (domain.fluent(f).is_boolean())
                booleans.push_back(f);
        if (!booleans.empty() && coin(rng)) {
            const ActionId sense = domain.add_action("Sense", ActionKind::environment);
            SProp sprop{ sense, booleans[pick(rng, booleans.size())], {} };
            for (auto& row : sprop.accuracies) {
                row[0] = random_probability(rng);
                row[1] = Probability{ 1 } - row[0];
            }
            domain.sprops.push_back(sprop);
        }
    }
    return domain;
}

Formula random_query(Rng& rng, const Domain& domain, Instant lo, Instant hi, int depth)
{
    auto leaf = [&]() {
        const auto instant = static_cast<Instant>(lo + pick(rng, hi - lo + 1));
        if (!domain.actions().empty() && coin(rng, 0.25)) {
            const auto a = static_cast<ActionId>(pick(rng, domain.actions().size()));
            return Formula::atom(domain.action(a).name, instant);
        }
        return fluent_atom(rng, domain, instant);
    };
    return random_formula(rng, depth, leaf, Formula::Kind::atom);
}

Formula random_condition(Rng& rng, const Domain& domain, int depth)
{
    auto leaf = [&]() { return fluent_atom(rng, domain, std::nullopt); };
    return random_formula(rng, depth, leaf, Formula::Kind::atom);
}

} // namespace pec::testing
