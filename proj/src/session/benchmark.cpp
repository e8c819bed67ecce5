#include "pec/error.hpp"
#include "pec/exact.hpp"
#include "pec/progression.hpp"
#include "pec/session.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <ostream>

namespace pec::session
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Literal
{
    std::string fluent;
    bool holds;
};

Literal experiment_literal(char experiment)
{
    switch (experiment) {
    case 'a':
        return { "F", false };
    case 'b':
        return { "F", true };
    case 'f':
        return { "F5", true };
    default:
        return { "F1", true };
    }
}

std::string shortest(double value)
{
    std::array<char, 32> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    (void)ec;
    return std::string(buffer.data(), end);
}

std::size_t parse_count(const std::string& text)
{
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw PreconditionError("expected a non-negative integer parameter, got '" + text + "'");
    return value;
}

Domain build(char experiment, const std::string& param, Instant horizon, std::uint64_t seed)
{
    switch (experiment) {
    case 'a':
        return decay_domain(horizon);
    case 'b':
        return actions_domain(parse_count(param), horizon);
    case 'c':
        return fluents_domain(parse_count(param), horizon);
    case 'd': {
        const auto x = param.find('x');
        if (x == std::string::npos)
            throw PreconditionError("experiment (d) takes FLUENTSxACTIONS, got '" + param + "'");
        return grid_domain(parse_count(param.substr(0, x)), parse_count(param.substr(x + 1)), horizon);
    }
    case 'e':
        return initial_conditions_domain(parse_count(param), horizon);
    case 'f': {
        const auto density = Rational::parse(param);
        if (!density || !density->is_probability())
            throw PreconditionError("experiment (f) takes a density in [0, 1], got '" + param + "'");
        return density_domain(density->to_double(), seed, horizon);
    }
    default:
        throw PreconditionError(std::string{ "unknown experiment '" } + experiment + "'");
    }
}

std::vector<std::string> default_params(char experiment)
{
    switch (experiment) {
    case 'a':
        return { "-" };
    case 'b':
        return { "0", "1", "2", "3", "4" };
    case 'c':
        return { "1", "2", "4", "8" };
    case 'd':
        return { "1x1", "2x2", "4x2" };
    case 'e':
        return { "1", "256", "512", "1024" };
    case 'f':
        return { "0.1", "0.5", "1" };
    default:
        return {};
    }
}

TickInput narrative_tick(const Domain& domain, Instant instant)
{
    TickInput tick{ instant, {} };
    for (const auto& oprop : domain.narrative_at(instant))
        tick.events.push_back(TickEvent{ oprop.action, oprop.probability });
    return tick;
}

} // namespace

std::string to_string(Engine engine)
{
    switch (engine) {
    case Engine::exact:
        return "exact";
    case Engine::sampling:
        return "sampling";
    case Engine::progression:
        return "progression";
    }
    return "unknown";
}

std::optional<Engine> parse_engine(std::string_view text)
{
    for (const Engine engine : { Engine::exact, Engine::sampling, Engine::progression })
        if (to_string(engine) == text)
            return engine;
    return std::nullopt;
}

Formula experiment_query(char experiment, Instant instant)
{
    const Literal literal = experiment_literal(experiment);
    Formula atom = Formula::atom(literal.fluent, instant);
    return literal.holds ? atom : !atom;
}

std::vector<double> progression_tick_times(const Domain& domain)
{
    std::vector<double> times;
    BeliefState belief = initial_belief(domain);
    CooldownState cooldown{ 0 };
    while (belief.instant < domain.horizon) {
        const auto start = Clock::now();
        const auto decisions = fire_pprops(domain, belief, cooldown);
        belief = progress_step(domain, belief, narrative_tick(domain, belief.instant), executed_actions(decisions));
        times.push_back(seconds_since(start));
    }
    return times;
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec)
{
    const Instant horizon = spec.horizon.value_or(15);
    const auto params = spec.params.empty() ? default_params(spec.experiment) : spec.params;
    if (params.empty())
        throw PreconditionError(std::string{ "unknown experiment '" } + spec.experiment + "'");
    ExactOptions options;
    if (spec.max_worlds != 0)
        options.max_worlds = spec.max_worlds;

    const Literal literal = experiment_literal(spec.experiment);
    std::vector<BenchmarkRow> rows;
    for (const auto& param : params) {
        const Domain domain = build(spec.experiment, param, horizon, spec.seed);
        const FluentLiteral target = domain.literal(literal.fluent, literal.holds);
        auto row = [&](Engine engine, Instant instant) {
            BenchmarkRow r;
            r.experiment = spec.experiment;
            r.param = param;
            r.engine = engine;
            r.instant = instant;
            return r;
        };

        if (spec.engines.contains(Engine::exact)) {
            bool over_cap = false;
            for (Instant i = domain.origin; i <= domain.horizon; ++i) {
                BenchmarkRow r = row(Engine::exact, i);
                if (over_cap) {
                    r.note = "world cap exceeded";
                } else {
                    const auto start = Clock::now();
                    try {
                        r.value = query(domain, experiment_query(spec.experiment, i), options);
                    } catch (const ResourceLimitError&) {
                        over_cap = true;
                        r.note = "world cap exceeded";
                    }
                    r.seconds = seconds_since(start);
                }
                rows.push_back(std::move(r));
            }
        }

        if (spec.engines.contains(Engine::sampling)) {
            for (Instant i = domain.origin; i <= domain.horizon; ++i) {
                BenchmarkRow r = row(Engine::sampling, i);
                const auto start = Clock::now();
                try {
                    r.value = sample_query(domain, experiment_query(spec.experiment, i), spec.samples, spec.seed).estimate;
                } catch (const PreconditionError& e) {
                    r.note = e.what();
                }
                r.seconds = seconds_since(start);
                rows.push_back(std::move(r));
            }
        }

        if (spec.engines.contains(Engine::progression)) {
            // each row times the step that reaches its instant plus the marginal
            BeliefState belief = initial_belief(domain);
            CooldownState cooldown{ 0 };
            for (Instant i = domain.origin; i <= domain.horizon; ++i) {
                BenchmarkRow r = row(Engine::progression, i);
                const auto start = Clock::now();
                if (i > domain.origin) {
                    const auto decisions = fire_pprops(domain, belief, cooldown);
                    belief = progress_step(domain, belief, narrative_tick(domain, belief.instant),
                                           executed_actions(decisions));
                }
                r.value = belief.marginal(target);
                r.seconds = seconds_since(start);
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, std::ostream& out)
{
    out << "experiment,param,engine,instant,seconds,value\n";
    for (const auto& row : rows) {
        out << row.experiment << ',' << row.param << ',' << to_string(row.engine) << ',' << row.instant << ','
            << shortest(row.seconds) << ',';
        if (row.value)
            out << shortest(row.value->to_double());
        else
            out << "skipped";
        out << '\n';
    }
}

} // namespace pec::session
