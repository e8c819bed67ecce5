#include "pec/error.hpp"
#include "pec/runtime.hpp"
#include "pec/validate.hpp"

#include <algorithm>

namespace pec
{

Instant instant_of(const LogRecord& record)
{
    return std::visit(
        [](const auto& r) -> Instant {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, BeliefRecord>)
                return r.belief.instant;
            else if constexpr (std::is_same_v<T, ObservationEntry>)
                return r.observation.instant;
            else
                return r.instant;
        },
        record);
}

std::vector<BeliefState> SessionLog::beliefs() const
{
    std::vector<BeliefState> result;
    for (const auto& record : records)
        if (const auto* belief = std::get_if<BeliefRecord>(&record))
            result.push_back(belief->belief);
    return result;
}

std::vector<DecisionEntry> SessionLog::decisions() const
{
    std::vector<DecisionEntry> result;
    for (const auto& record : records)
        if (const auto* decision = std::get_if<DecisionEntry>(&record))
            result.push_back(*decision);
    return result;
}

std::vector<TrackedLiteral> tracked_literals(const std::vector<FluentDecl>& fluents)
{
    std::vector<TrackedLiteral> tracked;
    for (FluentId f = 0; f < fluents.size(); ++f) {
        const auto& decl = fluents[f];
        if (decl.is_boolean()) {
            const auto it = std::find(decl.values.begin(), decl.values.end(), true_value);
            tracked.push_back(TrackedLiteral{ decl.name, { f, static_cast<ValueId>(it - decl.values.begin()) } });
            continue;
        }
        for (ValueId v = 0; v < decl.values.size(); ++v)
            tracked.push_back(TrackedLiteral{ decl.name + "=" + decl.values[v], { f, v } });
    }
    return tracked;
}

std::string fingerprint(const Domain& domain)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : dsl::serialize_domain(domain)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string text(16, '0');
    for (int k = 15; k >= 0; --k) {
        text[static_cast<std::size_t>(k)] = hex[hash & 0xFU];
        hash >>= 4U;
    }
    return text;
}

namespace
{

std::string describe_condition(const PProp& pprop)
{
    if (!pprop.condition)
        return {};
    return pprop.condition->formula.to_string() + " in [" + pprop.condition->lower.to_string() + ", " +
           pprop.condition->upper.to_string() + "]";
}

} // namespace

Session::Session(Domain domain, SessionConfig config)
    : domain_{ std::move(domain) }, config_{ config }, cooldown_{ config.cooldown }
{
    const ValidationReport report = validate_domain(domain_);
    if (!report.ok()) {
        std::string message = "invalid domain:";
        for (const auto& issue : report.issues)
            if (issue.severity == Severity::error)
                message += " " + issue.message + ";";
        message.pop_back();
        throw DomainError(message);
    }
    horizon_ = std::min(config.horizon.value_or(domain_.horizon), domain_.horizon);
    if (horizon_ < domain_.origin)
        throw PreconditionError("session horizon precedes the timeline origin");
    config_.horizon = horizon_;
    current_ = domain_.origin;
    belief_ = initial_belief(domain_);

    log_.fingerprint = fingerprint(domain_);
    log_.config = config_;
    log_.origin = domain_.origin;
    log_.fluents = domain_.fluents();
}

void Session::open_tick()
{
    if (open_ || finished_)
        return;
    open_ = true;
    log_.records.emplace_back(BeliefRecord{ belief_ });
    ++log_.summary.instants;

    decisions_ = fire_pprops(domain_, belief_, cooldown_);
    for (const auto& decision : decisions_) {
        const auto& pprop = domain_.pprops[decision.pprop];
        log_.records.emplace_back(DecisionEntry{ decision.instant, domain_.action(decision.action).name,
                                                 decision.pprop, describe_condition(pprop), decision.belief,
                                                 decision.suppressed });
        ++(decision.suppressed ? log_.summary.suppressed : log_.summary.decisions);
    }

    tick_ = TickInput{ current_, {} };
    observations_.clear();
    for (const auto& oprop : domain_.narrative) {
        if (oprop.instant != current_)
            continue;
        tick_.events.push_back(TickEvent{ oprop.action, oprop.probability });
        log_.records.emplace_back(EventEntry{ current_, domain_.action(oprop.action).name, oprop.probability });
        ++log_.summary.events;
    }
}

void Session::require_current(Instant instant, const std::string& what) const
{
    if (finished_ || instant < current_)
        throw LateEventError(what + " for instant " + std::to_string(instant) + " arrived after its tick closed");
    if (instant > current_)
        throw PreconditionError(what + " for instant " + std::to_string(instant) + " while instant " +
                                std::to_string(current_) + " is open");
}

void Session::ingest(const dsl::EventRecord& event)
{
    if (!open_ && !finished_ && event.instant == current_)
        open_tick();
    require_current(event.instant, "event");
    const auto action = domain_.find_action(event.action);
    if (!action)
        throw DomainError("event names undeclared action '" + event.action + "'");
    if (domain_.action(*action).kind != ActionKind::environment)
        throw DomainError("'" + event.action + "' is an agent action; only environment events can be ingested");
    if (!event.probability.is_probability())
        throw PreconditionError("event probability " + event.probability.to_string() + " outside [0, 1]");
    for (const auto& existing : tick_.events)
        if (existing.action == *action)
            throw PreconditionError("duplicate event " + event.action + " at instant " + std::to_string(event.instant));
    tick_.events.push_back(TickEvent{ *action, event.probability });
    log_.records.emplace_back(EventEntry{ event.instant, event.action, event.probability });
    ++log_.summary.events;
}

void Session::observe(const ObservationRecord& observation)
{
    if (!open_ && !finished_ && observation.instant == current_)
        open_tick();
    require_current(observation.instant, "observation");
    const auto action = domain_.find_action(observation.sense);
    if (!action)
        throw DomainError("observation names undeclared action '" + observation.sense + "'");
    (void)sprop_for(domain_, *action);
    observations_.push_back(observation);
}

void Session::close_tick()
{
    if (finished_)
        return;
    open_tick();
    const auto fired = executed_actions(decisions_);
    const bool last = current_ == horizon_;

    Domain augmented;
    const Domain* effective = &domain_;
    TickInput tick = tick_;
    if (!observations_.empty()) {
        augmented = domain_;
        for (const auto& observation : observations_) {
            const ActionId sense = *domain_.find_action(observation.sense);
            const SProp& sprop = sprop_for(domain_, sense);
            const Probability prior =
                belief_.marginal(domain_.literal(domain_.fluent(sprop.fluent).name, true));
            const auto translated =
                translate_observation(domain_, sprop, Observation{ sense, observation.instant, observation.result },
                                      prior);
            const ActionId injected = inject_observation(augmented, translated);
            tick.events.push_back(TickEvent{ injected, translated.probability });
            log_.records.emplace_back(ObservationEntry{ observation, translated.action, translated.probability, !last });
            ++log_.summary.observations;
        }
        effective = &augmented;
    }

    if (!last) {
        try {
            belief_ = progress_step(*effective, belief_, tick, fired);
        } catch (const AmbiguousMatchError& e) {
            if (observations_.empty())
                throw;
            throw UnsupportedDomain(std::string{ "observation coincides with another causal rule: " } + e.what());
        }
        ++current_;
    } else {
        finished_ = true;
    }
    open_ = false;
    decisions_.clear();
    observations_.clear();
    tick_ = TickInput{};
}

void Session::submit(const TickBatch& batch)
{
    if (finished_ || batch.instant < current_)
        throw LateEventError("batch for instant " + std::to_string(batch.instant) + " arrived after its tick closed");
    if (batch.instant > horizon_)
        throw PreconditionError("batch for instant " + std::to_string(batch.instant) + " is beyond the horizon " +
                                std::to_string(horizon_));
    while (current_ < batch.instant)
        close_tick();
    open_tick();
    for (const auto& event : batch.events)
        ingest(event);
    for (const auto& observation : batch.observations)
        observe(observation);
    close_tick();
}

SessionLog Session::finish()
{
    while (!finished_)
        close_tick();
    return log_;
}

SessionLog run_session(const Domain& domain, const TickSource& source, const SessionConfig& config)
{
    Session session{ domain, config };
    while (auto batch = source())
        session.submit(*batch);
    return session.finish();
}

SessionLog run_session(const Domain& domain, const std::vector<TickBatch>& batches, const SessionConfig& config)
{
    std::size_t next = 0;
    return run_session(
        domain,
        [&]() -> std::optional<TickBatch> {
            if (next == batches.size())
                return std::nullopt;
            return batches[next++];
        },
        config);
}

} // namespace pec
