#pragma once

#include "pec/core.hpp"
#include "pec/domain.hpp"
#include "pec/formula.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace pec
{

inline constexpr std::uint64_t builtin_world_cap = std::uint64_t{ 1 } << 20;

/// `PEC_MAX_WORLDS` if set to a positive integer, otherwise 2^20.
std::uint64_t default_world_cap();

struct ExactOptions
{
    std::uint64_t max_worlds = default_world_cap();
    std::uint64_t max_states = default_state_cap;
};

/// Outcome of one scheduled p-proposition at one instant.
struct Firing
{
    std::size_t pprop = 0; // index into Domain::pprops
    Instant instant = 0;
    ActionId action = 0;
    std::optional<Probability> belief; // absent for unconditional p-propositions
    bool fired = false;
};

struct ResolvedPlan
{
    std::vector<Firing> firings; // ordered by instant, then p-proposition index

    [[nodiscard]] bool fired(ActionId action, Instant instant) const;
};

/// Decides every scheduled p-proposition up to `upto` (default: the horizon),
/// instant by instant, against the belief induced by the decisions before it.
ResolvedPlan resolve_plan(const Domain& domain, std::optional<Instant> upto = std::nullopt,
                          const ExactOptions& options = {});

/// The same domain with p-propositions replaced by one unconditional
/// proposition per fired (action, instant).
Domain apply_plan(const Domain& domain, const ResolvedPlan& plan);

[[nodiscard]] bool has_conditional_pprops(const Domain& domain);

/// Agent actions forced at `instant` by unconditional p-propositions.
std::vector<ActionId> scheduled_actions(const Domain& domain, Instant instant);

/// i(W) * occurrence factor * transition factor; 0 for worlds that are not
/// well-behaved. Conditional plans are resolved first. The world must span
/// the timeline exactly.
Probability world_weight(const Domain& domain, const World& world);

struct WeightedWorld
{
    World world;
    Probability weight;
};

struct Measure
{
    std::vector<WeightedWorld> worlds;

    [[nodiscard]] Probability total() const;
};

using WorldVisitor = std::function<void(const World&, const Probability&)>;

/// Depth-first walk over the well-behaved worlds of a domain whose plan is
/// already unconditional, truncated after instant `last`. Occurrences at
/// `last` are branched only when `occurrences_at_last` is set.
/// Throws ResourceLimitError once more than `options.max_worlds` are visited.
void for_each_world(const Domain& resolved, Instant last, bool occurrences_at_last, const WorldVisitor& visit,
                    const ExactOptions& options = {});

Measure enumerate_worlds(const Domain& domain, const ExactOptions& options = {});

/// Distribution over complete states at `instant`, sorted by state.
std::vector<std::pair<State, Probability>> state_distribution(const Domain& domain, Instant instant,
                                                              const ExactOptions& options = {});

/// Exact probability of an i-formula. Throws DomainError for unknown names or
/// instants outside the timeline, ResourceLimitError past the cap.
Probability query(const Domain& domain, const Formula& formula, const ExactOptions& options = {});

struct SampleEstimate
{
    Probability estimate;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double std_error = 0; // sqrt(1/(4M)), the worst-case standard error
};

/// Forward sampling. The plan must be unconditional (PreconditionError otherwise).
SampleEstimate sample_query(const Domain& domain, const Formula& formula, std::uint64_t samples, std::uint64_t seed);

} // namespace pec
