#include "pec/dsl.hpp"
#include "pec/error.hpp"
#include "pec/exact.hpp"
#include "pec/sensing.hpp"
#include "pec/session.hpp"
#include "pec/validate.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pec::session
{

namespace
{

/// Usage problems detected after CLI11 accepted the arguments.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in{ path, std::ios::binary };
    if (!in)
        throw Error("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string approximate(const Probability& value)
{
    std::array<char, 32> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.6f", value.to_double());
    return buffer.data();
}

/// `0.158275 (6331/40000)`; non-terminating values print six rounded digits and `...`.
std::string describe_probability(const Probability& value)
{
    const std::string fraction = value.fraction();
    if (auto decimal = value.exact_decimal())
        return *decimal == fraction ? fraction : *decimal + " (" + fraction + ")";
    return approximate(value) + "... (" + fraction + ")";
}

/// Parses and validates; diagnostics go to `err`. Returns nullopt on errors.
std::optional<Domain> load_domain(const std::string& path, std::ostream& err, bool show_warnings)
{
    const std::string text = read_file(path);
    auto parsed = dsl::parse_domain(text);
    for (const auto& diagnostic : parsed.diagnostics)
        err << dsl::format(diagnostic, path) << '\n';
    if (!parsed.ok())
        return std::nullopt;
    const ValidationReport report = validate_domain(*parsed.value);
    for (const auto& issue : report.issues) {
        if (issue.severity == Severity::warning && !show_warnings)
            continue;
        err << path << ": " << (issue.severity == Severity::error ? "error" : "warning") << " [" << issue.code
            << "]: " << issue.message << '\n';
    }
    if (!report.ok())
        return std::nullopt;
    return std::move(*parsed.value);
}

std::optional<Formula> load_query(const std::string& text, std::ostream& err)
{
    auto parsed = dsl::parse_query(text);
    for (const auto& diagnostic : parsed.diagnostics)
        err << dsl::format(diagnostic, "<query>") << '\n';
    if (!parsed.ok())
        return std::nullopt;
    return std::move(*parsed.value);
}

struct Options
{
    std::string file;
    std::string formula;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
    std::uint64_t max_worlds = 0;
    std::string events;
    Instant cooldown = default_cooldown;
    std::optional<Instant> horizon;
    std::string out;
    std::string thresholds;
    std::string csv;
    char experiment = 'a';
    std::vector<std::string> params;
    std::vector<std::string> engines;
};

int command_check(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto domain = load_domain(o.file, err, true);
    if (!domain)
        return 1;
    out << o.file << ": ok (" << domain->fluents().size() << " fluents, " << domain->actions().size()
        << " actions, instants " << domain->origin << ".." << domain->horizon << ")\n";
    return 0;
}

ExactOptions exact_options(const Options& o)
{
    ExactOptions options;
    if (o.max_worlds != 0)
        options.max_worlds = o.max_worlds;
    return options;
}

int command_query(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto domain = load_domain(o.file, err, false);
    const auto formula = load_query(o.formula, err);
    if (!domain || !formula)
        return 1;
    out << describe_probability(query(*domain, *formula, exact_options(o))) << '\n';
    return 0;
}

int command_sample(const Options& o, std::ostream& out, std::ostream& err)
{
    if (o.samples == 0)
        throw UsageError("-M must be positive");
    const auto domain = load_domain(o.file, err, false);
    const auto formula = load_query(o.formula, err);
    if (!domain || !formula)
        return 1;
    const SampleEstimate estimate = sample_query(*domain, *formula, o.samples, o.seed);
    std::array<char, 32> error{};
    std::snprintf(error.data(), error.size(), "%.6f", estimate.std_error);
    out << describe_probability(estimate.estimate) << " [std error " << error.data() << ", " << estimate.samples
        << " samples, seed " << estimate.seed << "]\n";
    return 0;
}

int command_run(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto domain = load_domain(o.file, err, false);
    if (!domain)
        return 1;
    SessionConfig config{ o.cooldown, o.horizon };
    Session session{ *domain, config };

    std::ifstream file;
    std::istream* events = &std::cin;
    if (o.events.empty()) {
        events = nullptr;
    } else if (o.events != "-") {
        file.open(o.events);
        if (!file)
            throw Error("cannot read " + o.events);
        events = &file;
    }
    if (events != nullptr) {
        TickReader reader{ *events, domain->origin, session.horizon() };
        while (auto batch = reader.next())
            session.submit(*batch);
    }
    const SessionLog log = session.finish();

    if (o.out.empty()) {
        write_jsonl(log, out);
        return 0;
    }
    std::ofstream sink{ o.out, std::ios::binary };
    if (!sink)
        throw Error("cannot write " + o.out);
    write_jsonl(log, sink);
    out << "wrote " << o.out << ": " << log.summary.instants << " instants, " << log.summary.events << " events, "
        << log.summary.observations << " observations, " << log.summary.decisions << " decisions, "
        << log.summary.suppressed << " suppressed\n";
    return 0;
}

int command_report(const Options& o, std::ostream& out, std::ostream& /*err*/)
{
    std::ifstream in{ o.file };
    if (!in)
        throw Error("cannot read " + o.file);
    const SessionLog log = read_jsonl(in);
    const auto thresholds = parse_thresholds(o.thresholds, tracked_literals(log.fluents));
    if (!thresholds)
        throw UsageError("malformed --thresholds '" + o.thresholds + "'");
    const Report report = generate_report(log, *thresholds);
    out << report.text;
    if (!o.csv.empty()) {
        std::ofstream sink{ o.csv, std::ios::binary };
        if (!sink)
            throw Error("cannot write " + o.csv);
        sink << report.csv;
    }
    return 0;
}

int command_forecast(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto domain = load_domain(o.file, err, false);
    if (!domain)
        return 1;
    const OutcomeForecast forecast = forecast_outcomes(*domain);
    out << "prior " << describe_probability(forecast.prior) << '\n';
    for (const auto& row : forecast.rows) {
        out << '(';
        for (std::size_t k = 0; k < row.results.size(); ++k)
            out << (k > 0 ? "," : "") << (row.results[k] == SenseResult::positive ? '+' : '-');
        out << ") probability " << describe_probability(row.probability) << ", posterior "
            << describe_probability(row.posterior) << '\n';
    }
    return 0;
}

int command_bench(const Options& o, std::ostream& out, std::ostream& /*err*/)
{
    BenchmarkSpec spec;
    spec.experiment = o.experiment;
    spec.params = o.params;
    spec.horizon = o.horizon;
    spec.samples = o.samples;
    spec.seed = o.seed;
    spec.max_worlds = o.max_worlds;
    if (!o.engines.empty()) {
        spec.engines.clear();
        for (const auto& name : o.engines) {
            const auto engine = parse_engine(name);
            if (!engine)
                throw UsageError("unknown engine '" + name + "'");
            spec.engines.insert(*engine);
        }
    }
    const auto rows = run_benchmark(spec);
    if (o.out.empty()) {
        write_benchmark_csv(rows, out);
        return 0;
    }
    std::ofstream sink{ o.out, std::ios::binary };
    if (!sink)
        throw Error("cannot write " + o.out);
    write_benchmark_csv(rows, sink);
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{ "Probabilistic event calculus toolkit: exact queries, sampling, runtime progression" };
    app.require_subcommand(1, 1);
    Options o;

    auto* check = app.add_subcommand("check", "Parse and validate a domain file");
    check->add_option("FILE", o.file, "Domain file")->required();

    auto* query_cmd = app.add_subcommand("query", "Exact probability of an i-formula");
    query_cmd->add_option("FILE", o.file, "Domain file")->required();
    query_cmd->add_option("-q,--query", o.formula, "Formula, e.g. \"Attention@2\"")->required();
    query_cmd->add_option("--max-worlds", o.max_worlds, "World enumeration cap");

    auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of an i-formula");
    sample->add_option("FILE", o.file, "Domain file")->required();
    sample->add_option("-q,--query", o.formula, "Formula")->required();
    sample->add_option("-M,--samples", o.samples, "Number of sampled worlds");
    sample->add_option("--seed", o.seed, "Random seed");

    auto* run = app.add_subcommand("run", "Run a progression session and write its JSONL log");
    run->add_option("FILE", o.file, "Domain file")->required();
    run->add_option("--events", o.events, "Event file, or - for stdin");
    run->add_option("--cooldown", o.cooldown, "Per-action cooldown in ticks");
    run->add_option("--horizon", o.horizon, "Stop at this instant");
    run->add_option("--out", o.out, "Log path (default stdout)");

    auto* report = app.add_subcommand("report", "Summarize a session log");
    report->add_option("LOG", o.file, "JSONL session log")->required();
    report->add_option("--thresholds", o.thresholds, "0.3 or Name=0.3,Other=0.2");
    report->add_option("--csv", o.csv, "Write the marginal series as CSV");

    auto* forecast = app.add_subcommand("forecast", "Outcome table of a domain's sensing performances");
    forecast->add_option("FILE", o.file, "Domain file")->required();

    auto* bench = app.add_subcommand("bench", "Scalability experiments");
    bench->add_option("--experiment", o.experiment, "a, b, c, d, e or f")->required()->check(
        CLI::IsMember({ 'a', 'b', 'c', 'd', 'e', 'f' }));
    bench->add_option("--param", o.params, "Experiment parameters (n, FxA for d, density for f)");
    bench->add_option("--engine", o.engines, "exact, sampling, progression");
    bench->add_option("--horizon", o.horizon, "Last instant (default 15)");
    bench->add_option("-M,--samples", o.samples, "Samples for the sampling engine");
    bench->add_option("--seed", o.seed, "Seed for sampling and experiment (f)");
    bench->add_option("--max-worlds", o.max_worlds, "World enumeration cap");
    bench->add_option("--out", o.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (check->parsed())
            return command_check(o, out, err);
        if (query_cmd->parsed())
            return command_query(o, out, err);
        if (sample->parsed())
            return command_sample(o, out, err);
        if (run->parsed())
            return command_run(o, out, err);
        if (report->parsed())
            return command_report(o, out, err);
        if (forecast->parsed())
            return command_forecast(o, out, err);
        if (bench->parsed())
            return command_bench(o, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << " (raise the cap with --max-worlds or PEC_MAX_WORLDS)\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace pec::session
