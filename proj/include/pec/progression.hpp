#pragma once

#include "pec/core.hpp"
#include "pec/domain.hpp"

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pec
{

/// Distribution over complete states at one instant. Only the support is
/// stored, sorted by state; probabilities are positive and sum to 1.
struct BeliefState
{
    Instant instant = 0;
    std::vector<std::pair<State, Probability>> support;

    [[nodiscard]] Probability total() const;
    [[nodiscard]] Probability probability_of(const BoundFormula& condition) const;
    [[nodiscard]] Probability marginal(FluentLiteral literal) const;

    bool operator==(const BeliefState&) const = default;
};

struct TickEvent
{
    ActionId action;
    Probability probability;
};

/// The o-propositions of one instant.
struct TickInput
{
    Instant instant = 0;
    std::vector<TickEvent> events;
};

struct Decision
{
    Instant instant = 0;
    ActionId action = 0;
    std::size_t pprop = 0;             // index into Domain::pprops
    std::optional<Probability> belief; // absent for unconditional p-propositions
    bool suppressed = false;           // blocked by the cooldown; not executed
};

/// Per-action refractory period: after an executed firing at t, firings of the
/// same action at t+1 .. t+cooldown are suppressed.
class CooldownState
{
public:
    explicit CooldownState(Instant cooldown = 0) : cooldown_{ cooldown } {}

    [[nodiscard]] Instant cooldown() const { return cooldown_; }
    [[nodiscard]] bool blocks(ActionId action, Instant instant) const;
    void record(ActionId action, Instant instant) { last_[action] = instant; }

private:
    Instant cooldown_;
    std::map<ActionId, Instant> last_;
};

BeliefState initial_belief(const Domain& domain);

/// Evaluates every p-proposition scheduled at belief.instant. Returns fired
/// decisions, including suppressed ones, in p-proposition order.
std::vector<Decision> fire_pprops(const Domain& domain, const BeliefState& belief, CooldownState& cooldown);

/// Agent actions actually executed by a list of decisions.
std::vector<ActionId> executed_actions(std::span<const Decision> decisions);

/// One transition. Events on actions no causal rule mentions cannot change
/// the state and are marginalized out. Throws if the resulting mass is not
/// exactly 1.
BeliefState progress_step(const Domain& domain, const BeliefState& belief, const TickInput& tick,
                          std::span<const ActionId> fired);

/// Belief at `upto` obtained by progressing the domain's own narrative and plan.
BeliefState belief_at(const Domain& domain, Instant upto);

/// The domain re-rooted at `upto`: its initial distribution is the belief at
/// `upto` and narrative and plan keep only instants >= upto. Instants stay absolute.
Domain progressed_domain(const Domain& domain, Instant upto);

} // namespace pec
