#include "pec/error.hpp"
#include "pec/exact.hpp"

#include <cmath>
#include <random>

namespace pec
{

namespace
{

/// Index drawn from a discrete distribution given as cumulative doubles.
std::size_t draw(std::mt19937_64& rng, const std::vector<double>& cumulative)
{
    const double u = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
    for (std::size_t k = 0; k + 1 < cumulative.size(); ++k)
        if (u < cumulative[k])
            return k;
    return cumulative.size() - 1;
}

bool coin(std::mt19937_64& rng, double p)
{
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53 < p;
}

} // namespace

SampleEstimate sample_query(const Domain& domain, const Formula& formula, std::uint64_t samples, std::uint64_t seed)
{
    if (has_conditional_pprops(domain))
        throw PreconditionError("sampling needs a resolved plan; run resolve_plan first");
    if (samples == 0)
        throw PreconditionError("sample count must be at least 1");
    if (domain.initial.outcomes.empty())
        throw PreconditionError("domain has no initial distribution");
    const BoundFormula bound = bind_query(formula, domain);
    for (Instant instant : formula.instants())
        if (!domain.contains(instant))
            throw DomainError("query instant " + std::to_string(instant) + " is outside the timeline");
    const Instant last = formula.max_instant().value_or(domain.origin);

    std::vector<double> initial;
    double running = 0;
    for (const auto& outcome : domain.initial.outcomes)
        initial.push_back(running += outcome.probability.to_double());

    struct Coin
    {
        ActionId action;
        double probability;
    };
    std::vector<std::vector<ActionId>> forced;
    std::vector<std::vector<Coin>> coins;
    for (Instant instant = domain.origin;; ++instant) {
        forced.push_back(scheduled_actions(domain, instant));
        coins.emplace_back();
        for (const auto& oprop : domain.narrative)
            if (oprop.instant == instant)
                coins.back().push_back(Coin{ oprop.action, oprop.probability.to_double() });
        if (instant == last)
            break;
    }

    std::mt19937_64 rng{ seed };
    std::uint64_t hits = 0;
    World world;
    world.origin = domain.origin;
    std::vector<double> cumulative;
    for (std::uint64_t n = 0; n < samples; ++n) {
        world.steps.clear();
        world.steps.push_back(Step{ domain.initial.outcomes[draw(rng, initial)].state, {} });
        for (std::size_t k = 0;; ++k) {
            Step& step = world.steps.back();
            OccurrenceSet occurrences{ forced[k] };
            for (const auto& c : coins[k])
                if (coin(rng, c.probability))
                    occurrences.insert(c.action);
            step.occurrences = std::move(occurrences);
            if (k + 1 == coins.size())
                break;
            const auto next = successors(domain, step.state, step.occurrences);
            cumulative.clear();
            running = 0;
            for (const auto& entry : next)
                cumulative.push_back(running += entry.second.to_double());
            world.steps.push_back(Step{ next[draw(rng, cumulative)].first, {} });
        }
        if (bound.evaluate(world))
            ++hits;
    }

    SampleEstimate estimate;
    estimate.estimate = Rational{ static_cast<long>(hits), static_cast<long>(samples) };
    estimate.samples = samples;
    estimate.seed = seed;
    estimate.std_error = std::sqrt(0.25 / static_cast<double>(samples));
    return estimate;
}

} // namespace pec
