#pragma once

#include "pec/domain.hpp"
#include "pec/runtime.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pec::session
{

// ---------------------------------------------------------------------------
// Event streams

/// Reads an event file line by line and hands out one batch per instant,
/// origin..horizon, including empty ones. Lines are DSL events
/// (`A occurs-at 3 with-prob 0.7`), JSON events
/// (`{"instant":3,"action":"A","prob":"0.7"}`) or JSON observations
/// (`{"instant":3,"sense":"Test","result":"positive"}`). Blank lines and `%`
/// comments are skipped. Reading is incremental: only the current instant is
/// buffered.
class TickReader
{
public:
    TickReader(std::istream& in, Instant origin, Instant horizon);

    /// Throws StreamError for malformed lines, decreasing instants, duplicate
    /// (action, instant) pairs and instants beyond the horizon.
    std::optional<TickBatch> next();

private:
    struct Line
    {
        std::size_t number;
        Instant instant;
        std::optional<dsl::EventRecord> event;
        std::optional<ObservationRecord> observation;
    };

    std::optional<Line> read_line();

    std::istream& in_;
    Instant next_instant_;
    Instant horizon_;
    bool done_ = false;
    std::size_t line_ = 0;
    std::optional<Line> pending_;
    Instant last_seen_ = 0;
    bool seen_any_ = false;
    std::set<std::pair<std::string, Instant>> seen_events_;
};

/// All batches of a stream.
std::vector<TickBatch> ingest_stream(std::istream& in, Instant origin, Instant horizon);

// ---------------------------------------------------------------------------
// Reports

/// Per tracked literal; a missing entry means "no threshold".
using Thresholds = std::map<std::string, Probability>;

/// `0.3` applies to every tracked literal; `TaskCorrect=0.3,Engagement=0.2` names them.
std::optional<Thresholds> parse_thresholds(std::string_view text, const std::vector<TrackedLiteral>& tracked);

struct Series
{
    std::string name;
    std::vector<Probability> values; // one per instant of the session
};

struct ThresholdCount
{
    std::string name;
    Probability threshold;
    std::size_t above = 0; // strictly greater than the threshold
    std::size_t total = 0;
};

struct Minimum
{
    std::string name;
    Instant instant = 0; // earliest instant on ties
    Probability value;
};

struct Report
{
    std::vector<Instant> instants;
    std::vector<Series> series;
    std::vector<ThresholdCount> counts;
    std::vector<Minimum> minima;
    std::vector<DecisionEntry> decisions;
    std::string text;
    std::string csv;
};

Report generate_report(const SessionLog& log, const Thresholds& thresholds);

// ---------------------------------------------------------------------------
// Scalability experiments

/// One fluent F and one action A, instants 0..n-1, `A occurs-at I with-prob 0.5`
/// at every instant and no causal rules: 2^n well-behaved worlds.
Domain toy_domain(Instant instants);

/// (a) F initially true; A causes-one-of {({!F}, 0.2), ({}, 0.8)}; A every instant with 0.5.
Domain decay_domain(Instant horizon = 15);
/// (b) F and n actions occurring at every instant with 0.5, no causal rules.
Domain actions_domain(std::size_t actions, Instant horizon = 15);
/// (c) n static fluents, all initially true.
Domain fluents_domain(std::size_t fluents, Instant horizon = 15);
/// (d) n static fluents and m actions.
Domain grid_domain(std::size_t fluents, std::size_t actions, Instant horizon = 15);
/// (e) 10 static fluents; n equiprobable initial states (the first n in state order).
Domain initial_conditions_domain(std::size_t conditions, Instant horizon = 15);
/// (f) 5 fluents and actions; every non-empty action subset S causes F_i iff A_i in S
/// with 4/5; each `A_i occurs-at I with-prob 0.5` is kept with probability `density`.
Domain density_domain(double density, std::uint64_t seed, Instant horizon = 15);

enum class Engine
{
    exact,
    sampling,
    progression
};

std::string to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view text);

struct BenchmarkSpec
{
    char experiment = 'a';          // 'a' .. 'f'
    std::vector<std::string> params; // per experiment: n, "FxA" for (d), p for (f); empty for (a)
    std::set<Engine> engines{ Engine::exact, Engine::sampling, Engine::progression };
    std::optional<Instant> horizon; // default 15
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
    std::uint64_t max_worlds = 0; // 0: default cap
};

struct BenchmarkRow
{
    char experiment = 'a';
    std::string param;
    Engine engine = Engine::exact;
    Instant instant = 0;
    double seconds = 0;
    std::optional<Probability> value; // empty when skipped
    std::string note;                 // why a row was skipped
};

/// The literal each experiment queries at every instant: `!F` for (a), `F` / `F1` otherwise.
Formula experiment_query(char experiment, Instant instant);

/// Times one query per instant and engine. A cap overrun marks the row skipped.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec);

void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, std::ostream& out);

/// Seconds spent in each progression step of `domain`, origin..horizon-1.
std::vector<double> progression_tick_times(const Domain& domain);

// ---------------------------------------------------------------------------
// Command line

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pec::session
