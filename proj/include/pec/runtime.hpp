#pragma once

#include "pec/domain.hpp"
#include "pec/dsl.hpp"
#include "pec/progression.hpp"
#include "pec/sensing.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pec
{

inline constexpr Instant default_cooldown = 20;

struct SessionConfig
{
    Instant cooldown = default_cooldown;
    std::optional<Instant> horizon; // defaults to the domain's horizon; may only shorten it

    bool operator==(const SessionConfig&) const = default;
};

struct ObservationRecord
{
    Instant instant = 0;
    std::string sense;
    SenseResult result = SenseResult::positive;

    bool operator==(const ObservationRecord&) const = default;
};

/// Everything that arrives for one instant.
struct TickBatch
{
    Instant instant = 0;
    std::vector<dsl::EventRecord> events;
    std::vector<ObservationRecord> observations;
};

struct BeliefRecord
{
    BeliefState belief;
    bool operator==(const BeliefRecord&) const = default;
};

struct DecisionEntry
{
    Instant instant = 0;
    std::string action;
    std::size_t pprop = 0;
    std::string condition; // e.g. "TaskCorrect in [0, 0.3]"; empty when unconditional
    std::optional<Probability> belief;
    bool suppressed = false;

    bool operator==(const DecisionEntry&) const = default;
};

struct EventEntry
{
    Instant instant = 0;
    std::string action;
    Probability probability;

    bool operator==(const EventEntry&) const = default;
};

struct ObservationEntry
{
    ObservationRecord observation;
    std::string action; // the translated event
    Probability probability;
    bool applied = true; // false at the horizon, where no transition follows

    bool operator==(const ObservationEntry&) const = default;
};

using LogRecord = std::variant<BeliefRecord, DecisionEntry, EventEntry, ObservationEntry>;

Instant instant_of(const LogRecord& record);

struct SessionSummary
{
    std::size_t instants = 0;
    std::size_t events = 0;
    std::size_t observations = 0;
    std::size_t decisions = 0;
    std::size_t suppressed = 0;

    bool operator==(const SessionSummary&) const = default;
};

/// Output narrative of a session. Within an instant records appear as
/// belief, decisions, events, observations.
struct SessionLog
{
    std::string fingerprint;
    SessionConfig config;
    Instant origin = 0;
    std::vector<FluentDecl> fluents;
    std::vector<LogRecord> records;
    SessionSummary summary;

    [[nodiscard]] std::vector<BeliefState> beliefs() const;
    [[nodiscard]] std::vector<DecisionEntry> decisions() const;

    bool operator==(const SessionLog&) const = default;
};

/// Series name for a literal: `F` for booleans (value true), `F=v` otherwise.
struct TrackedLiteral
{
    std::string name;
    FluentLiteral literal;
};
std::vector<TrackedLiteral> tracked_literals(const std::vector<FluentDecl>& fluents);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string fingerprint(const Domain& domain);

void write_jsonl(const SessionLog& log, std::ostream& out);
std::string to_jsonl(const SessionLog& log);
/// Throws StreamError naming the offending line.
SessionLog read_jsonl(std::istream& in);

/// One progression session. Each tick runs: belief snapshot, plan firing,
/// event ingestion, progression (never past the horizon), logging.
class Session
{
public:
    Session(Domain domain, SessionConfig config);

    [[nodiscard]] Instant current() const { return current_; }
    [[nodiscard]] Instant horizon() const { return horizon_; }
    [[nodiscard]] bool finished() const { return finished_; }
    [[nodiscard]] const BeliefState& belief() const { return belief_; }
    [[nodiscard]] const Domain& domain() const { return domain_; }
    [[nodiscard]] const SessionLog& log() const { return log_; }

    /// Snapshot and plan firing for the current instant; idempotent.
    void open_tick();
    /// LateEventError for an already closed instant, PreconditionError for a future one.
    void ingest(const dsl::EventRecord& event);
    void observe(const ObservationRecord& observation);
    void close_tick();

    /// Closes empty ticks up to batch.instant, then feeds and closes that tick.
    void submit(const TickBatch& batch);
    /// Closes the remaining ticks up to the horizon.
    SessionLog finish();

private:
    void require_current(Instant instant, const std::string& what) const;

    Domain domain_;
    SessionConfig config_;
    Instant horizon_;
    Instant current_;
    bool open_ = false;
    bool finished_ = false;
    BeliefState belief_;
    CooldownState cooldown_;
    std::vector<Decision> decisions_;
    TickInput tick_;
    std::vector<ObservationRecord> observations_;
    SessionLog log_;
};

using TickSource = std::function<std::optional<TickBatch>()>;

SessionLog run_session(const Domain& domain, const TickSource& source, const SessionConfig& config);
SessionLog run_session(const Domain& domain, const std::vector<TickBatch>& batches, const SessionConfig& config);

} // namespace pec
