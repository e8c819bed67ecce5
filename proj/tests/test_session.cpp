#include "support/assets.hpp"

#include "pec/exact.hpp"
#include "pec/runtime.hpp"
#include "pec/session.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

using namespace pec;
using pec::testing::asset_path;
using pec::testing::load_asset;
using pec::testing::q;
using pec::testing::r;

namespace
{

SessionLog avatea_log(Instant cooldown)
{
    const Domain d = load_asset("avatea.pec");
    std::ifstream events{ asset_path("avatea_events.jsonl") };
    return run_session(d, session::ingest_stream(events, d.origin, d.horizon), SessionConfig{ cooldown, {} });
}

std::map<std::string, std::set<Instant>> executed(const SessionLog& log)
{
    std::map<std::string, std::set<Instant>> out;
    for (const auto& d : log.decisions())
        if (!d.suppressed)
            out[d.action].insert(d.instant);
    return out;
}

struct Cli
{
    int status = 0;
    std::string out;
    std::string err;
};

Cli cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "pec");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Cli result;
    result.status = session::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "pec_session_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::vector<TickBatch> read_stream(const std::string& text, Instant origin, Instant horizon)
{
    std::istringstream in{ text };
    return session::ingest_stream(in, origin, horizon);
}

} // namespace

TEST_CASE("avatea session with cooldown 0")
{
    const SessionLog log = avatea_log(0);
    const auto fired = executed(log);
    CHECK(fired.at("PlaySound") == std::set<Instant>{ 4 });
    CHECK(fired.at("LowerDifficultyLevel") == std::set<Instant>{ 2, 3, 4 });
    CHECK(log.beliefs().size() == 13);
    CHECK(log.summary.instants == 13);
    CHECK(log.summary.suppressed == 0);

    const auto thresholds = session::parse_thresholds("0.3", tracked_literals(log.fluents));
    REQUIRE(thresholds);
    const session::Report report = session::generate_report(log, *thresholds);
    CHECK(report.text.find("TaskCorrect above threshold 10/13 instants (76.9%)") != std::string::npos);
    CHECK(report.text.find("Engagement lowest at instant 4") != std::string::npos);
    CHECK(report.text.find("TaskCorrect lowest at instant 4") != std::string::npos);
    CHECK(report.decisions.size() == 4);
}

TEST_CASE("avatea session with the default cooldown")
{
    const SessionLog log = avatea_log(default_cooldown);
    const auto fired = executed(log);
    CHECK(fired.at("LowerDifficultyLevel") == std::set<Instant>{ 2 });
    CHECK(fired.at("PlaySound") == std::set<Instant>{ 4 });
    CHECK(log.summary.suppressed == 2);
    CHECK(log.summary.decisions == 2);
}

TEST_CASE("scenario 1 session")
{
    const Domain d = load_asset("scenario1.pec");
    const SessionLog log = run_session(d, std::vector<TickBatch>{}, SessionConfig{ 0, {} });
    CHECK(log.decisions().empty());
    const auto beliefs = log.beliefs();
    REQUIRE(beliefs.size() == 3);
    const auto att = d.literal("Attention", true);
    CHECK(beliefs[0].marginal(att) == 1);
    CHECK(beliefs[1].marginal(att) == r("0.325"));
    CHECK(beliefs[2].marginal(att) == r("0.158275"));
    CHECK(log.summary.events == 2);

    const auto report = session::generate_report(log, {});
    REQUIRE(report.series.size() == 1);
    CHECK(report.series[0].values == std::vector<Probability>{ 1, r("0.325"), r("0.158275") });
    CHECK(report.csv == "instant,Attention\n0,1\n1,0.325\n2,0.158275\n");
    CHECK(report.text.find("Decisions: 0") != std::string::npos);
}

TEST_CASE("static domain keeps its belief")
{
    const Domain d = session::fluents_domain(2, 5);
    const SessionLog log = run_session(d, std::vector<TickBatch>{}, SessionConfig{});
    const auto beliefs = log.beliefs();
    REQUIRE(beliefs.size() == 6);
    for (const auto& b : beliefs)
        CHECK(b.support == beliefs.front().support);
}

TEST_CASE("session beliefs agree with the exact engine on the decay domain")
{
    const Domain d = load_asset("decay.pec");
    const SessionLog log = run_session(d, std::vector<TickBatch>{}, SessionConfig{});
    const auto beliefs = log.beliefs();
    for (Instant i = 0; i <= 6; ++i)
        CHECK(beliefs[i].marginal(d.literal("F", false)) == query(d, q("!F@" + std::to_string(i))));
}

TEST_CASE("observations in a session")
{
    const Domain d = load_asset("flu.pec");
    const auto batches = read_stream("{\"instant\":0,\"sense\":\"Test\",\"result\":\"positive\"}\n"
                                     "{\"instant\":1,\"sense\":\"Test\",\"result\":\"positive\"}\n",
                                     d.origin, d.horizon);
    const SessionLog log = run_session(d, batches, SessionConfig{});
    const auto beliefs = log.beliefs();
    REQUIRE(beliefs.size() == 3);
    CHECK(beliefs[1].marginal(d.literal("Flu", true)) == Rational(14, 17));
    CHECK(beliefs[2].marginal(d.literal("Flu", true)) == Rational(28, 31));
    CHECK(log.summary.observations == 2);
}

TEST_CASE("session errors")
{
    const Domain d = load_asset("avatea.pec");
    Session s{ d, SessionConfig{ 0, {} } };
    s.open_tick();
    CHECK_THROWS_AS(s.ingest({ "Nope", 0, 1 }), DomainError);
    CHECK_THROWS_AS(s.ingest({ "PlaySound", 0, 1 }), DomainError);
    CHECK_THROWS_AS(s.ingest({ "LowValence", 0, r("3/2") }), PreconditionError);
    CHECK_THROWS_AS(s.ingest({ "LowValence", 1, 1 }), PreconditionError);
    s.ingest({ "LowValence", 0, r("0.5") });
    CHECK_THROWS_AS(s.ingest({ "LowValence", 0, r("0.5") }), PreconditionError);
    CHECK_THROWS_AS(s.observe({ 0, "LowValence", SenseResult::positive }), DomainError);
    s.close_tick();
    CHECK(s.current() == 1);
    CHECK_THROWS_AS(s.ingest({ "LowValence", 0, 1 }), LateEventError);
    CHECK_THROWS_AS(s.submit(TickBatch{ 0, {}, {} }), LateEventError);
    CHECK_THROWS_AS(s.submit(TickBatch{ 40, {}, {} }), PreconditionError);
    s.finish();
    CHECK(s.finished());
    CHECK_THROWS_AS(s.submit(TickBatch{ 12, {}, {} }), LateEventError);

    Domain broken = d;
    broken.initial.outcomes.clear();
    CHECK_THROWS_AS(Session(broken, SessionConfig{}), DomainError);
}

TEST_CASE("horizon override only shortens")
{
    const Domain d = load_asset("avatea.pec");
    CHECK(Session(d, SessionConfig{ 0, 5 }).horizon() == 5);
    CHECK(Session(d, SessionConfig{ 0, 50 }).horizon() == 12);
}

TEST_CASE("JSONL logs round-trip and are deterministic")
{
    const SessionLog log = avatea_log(0);
    const std::string text = to_jsonl(log);
    CHECK(text == to_jsonl(avatea_log(0)));
    std::istringstream in{ text };
    CHECK(read_jsonl(in) == log);
    CHECK(log.fingerprint == fingerprint(load_asset("avatea.pec")));
    CHECK(log.fingerprint.size() == 16);
    CHECK(text.find("\"type\":\"belief\"") != std::string::npos);
    CHECK(text.find("\"p\":\"") != std::string::npos);
}

TEST_CASE("malformed logs")
{
    const std::string text = to_jsonl(avatea_log(0));
    const auto first_newline = text.find('\n');
    auto expect_line = [](const std::string& bad, std::size_t line) {
        std::istringstream in{ bad };
        try {
            (void)read_jsonl(in);
            FAIL("accepted a malformed log");
        } catch (const StreamError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_line(text.substr(first_newline + 1), 1);                  // no header
    expect_line(text.substr(0, first_newline + 1) + "{oops\n", 2);   // bad JSON
    expect_line(text + "{\"type\":\"belief\",\"instant\":0}\n", static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1);
    std::istringstream truncated{ text.substr(0, first_newline + 1) };
    CHECK_THROWS_AS(read_jsonl(truncated), StreamError);
}

TEST_CASE("tick reader")
{
    SUBCASE("one batch per instant")
    {
        const auto batches = read_stream("% comment\n\nA occurs-at 1 with-prob 0.5\n"
                                         "{\"instant\":1,\"action\":\"B\",\"prob\":\"1/3\"}\n"
                                         "A occurs-at 3\n",
                                         0, 4);
        REQUIRE(batches.size() == 5);
        CHECK(batches[0].events.empty());
        CHECK(batches[1].events.size() == 2);
        CHECK(batches[1].events[1].probability == Rational(1, 3));
        CHECK(batches[3].events.size() == 1);
        CHECK(batches[4].instant == 4);
    }
    SUBCASE("errors name the line")
    {
        auto line_of = [](const std::string& text) -> std::size_t {
            try {
                (void)read_stream(text, 0, 5);
            } catch (const StreamError& e) {
                return e.line();
            }
            return 0;
        };
        CHECK(line_of("A occurs-at 3\nA occurs-at 2\n") == 2);
        CHECK(line_of("A occurs-at 3\n\nA occurs-at 3\n") == 3);
        CHECK(line_of("A occurs-at 9\n") == 1);
        CHECK(line_of("A occurs-at 1\n{\"instant\":\n") == 2);
        CHECK(line_of("A occurs-at 1\nB occurs-at 1\n") == 0);
    }
}

TEST_CASE("thresholds")
{
    const std::vector<FluentDecl> fluents{ { "Engagement", { "true", "false" } }, { "Mood", { "lo", "hi" } } };
    const auto tracked = tracked_literals(fluents);
    REQUIRE(tracked.size() == 3);
    CHECK(tracked[0].name == "Engagement");
    CHECK(tracked[1].name == "Mood=lo");
    const auto all = session::parse_thresholds("0.3", tracked);
    REQUIRE(all);
    CHECK(all->size() == 3);
    const auto named = session::parse_thresholds("Engagement=0.2, Mood=hi=1/2", tracked);
    REQUIRE(named);
    CHECK(named->at("Engagement") == r("0.2"));
    CHECK(named->at("Mood=hi") == r("0.5"));
    CHECK_FALSE(session::parse_thresholds("Nope=0.2", tracked));
    CHECK_FALSE(session::parse_thresholds("1.5", tracked));
    CHECK(session::parse_thresholds("", tracked)->empty());
}

TEST_CASE("report counters match the series")
{
    const SessionLog log = avatea_log(0);
    const auto thresholds = *session::parse_thresholds("TaskCorrect=0.3,Engagement=0.2", tracked_literals(log.fluents));
    const auto report = session::generate_report(log, thresholds);
    for (const auto& count : report.counts) {
        const auto& series = *std::find_if(report.series.begin(), report.series.end(),
                                           [&](const session::Series& s) { return s.name == count.name; });
        std::size_t above = 0;
        for (const auto& v : series.values)
            above += v > count.threshold ? 1 : 0;
        CHECK(count.above == above);
        CHECK(count.total == series.values.size());
    }
    std::istringstream csv{ report.csv };
    std::string line;
    std::size_t rows = 0;
    while (std::getline(csv, line))
        ++rows;
    CHECK(rows == report.instants.size() + 1);
}

TEST_CASE("experiment generators")
{
    CHECK(session::decay_domain(15) == load_asset("decay.pec"));
    CHECK(session::initial_conditions_domain(256, 3).initial.outcomes.size() == 256);
    CHECK(session::fluents_domain(10, 2).state_count() == 1024);
    CHECK(session::actions_domain(3, 4).actions().size() == 3);
    CHECK(session::grid_domain(4, 2, 3).fluents().size() == 4);
    CHECK(session::density_domain(0.5, 9, 15) == session::density_domain(0.5, 9, 15));
    CHECK(session::density_domain(1.0, 9, 15).narrative.size() == 5 * 16);
    CHECK(session::density_domain(0.0, 9, 15).narrative.empty());
    CHECK(session::density_domain(0.5, 9, 15).cprops.size() == 31);
}

TEST_CASE("benchmark rows")
{
    session::BenchmarkSpec spec;
    spec.experiment = 'a';
    spec.engines = { session::Engine::progression };
    const auto rows = session::run_benchmark(spec);
    REQUIRE(rows.size() == 16);
    for (const auto& row : rows)
        CHECK(std::abs(row.value->to_double() - (1 - std::pow(0.9, row.instant))) < 1e-12);

    session::BenchmarkSpec b;
    b.experiment = 'b';
    b.params = { "0", "2" };
    b.horizon = 4;
    b.engines = { session::Engine::exact, session::Engine::progression };
    const auto brows = session::run_benchmark(b);
    std::map<std::tuple<std::string, Instant>, Probability> exact;
    for (const auto& row : brows)
        if (row.engine == session::Engine::exact)
            exact[{ row.param, row.instant }] = *row.value;
    for (const auto& row : brows) {
        if (row.engine != session::Engine::progression)
            continue;
        CHECK(*row.value == exact.at({ row.param, row.instant }));
        if (row.param == "0")
            CHECK(*row.value == 1);
    }

    session::BenchmarkSpec capped;
    capped.experiment = 'b';
    capped.params = { "4" };
    capped.max_worlds = 1000;
    capped.engines = { session::Engine::exact };
    const auto crow = session::run_benchmark(capped);
    CHECK_FALSE(crow.back().value);
    CHECK(crow.back().note == "world cap exceeded");
    std::ostringstream csv;
    session::write_benchmark_csv(crow, csv);
    CHECK(csv.str().rfind("experiment,param,engine,instant,seconds,value\n", 0) == 0);
    CHECK(csv.str().find(",skipped\n") != std::string::npos);
}

TEST_CASE("cli query, sample, forecast and check")
{
    const auto query = cli({ "query", asset_path("scenario1.pec"), "-q", "Attention@2" });
    CHECK(query.status == 0);
    CHECK(query.out == "0.158275 (6331/40000)\n");
    CHECK(cli({ "query", asset_path("scenario1.pec"), "-q", "Attention@1" }).out == "0.325 (13/40)\n");
    CHECK(cli({ "query", asset_path("scenario1.pec"), "-q", "Attention@" }).status == 1);
    CHECK(cli({ "query", asset_path("scenario1.pec"), "-q", "Attention@9" }).status == 1);
    const auto capped = cli({ "query", asset_path("decay.pec"), "-q", "F@15", "--max-worlds", "4" });
    CHECK(capped.status == 1);
    CHECK(capped.err.find("--max-worlds") != std::string::npos);

    const auto s1 = cli({ "sample", asset_path("decay.pec"), "-q", "!F@15", "-M", "10000", "--seed", "7" });
    const auto s2 = cli({ "sample", asset_path("decay.pec"), "-q", "!F@15", "-M", "10000", "--seed", "7" });
    CHECK(s1.status == 0);
    CHECK(s1.out == s2.out);
    CHECK(s1.out.rfind("0.7922", 0) == 0);

    const auto forecast = cli({ "forecast", asset_path("flu.pec") });
    CHECK(forecast.status == 0);
    CHECK(forecast.out.find("(+,+) probability 0.496 (62/125), posterior 0.903226... (28/31)") != std::string::npos);

    CHECK(cli({ "check", asset_path("scenario1.pec") }).status == 0);
    const auto empty = cli({ "check", std::string{ PEC_TEST_DATA_DIR } + "/empty.pec" });
    CHECK(empty.status == 1);
    CHECK(empty.err.find("error") != std::string::npos);
    CHECK(cli({ "check", "/nonexistent.pec" }).status == 1);
}

TEST_CASE("cli usage errors")
{
    CHECK(cli({}).status == 2);
    CHECK(cli({ "frobnicate" }).status == 2);
    CHECK(cli({ "query", asset_path("scenario1.pec") }).status == 2);
    CHECK(cli({ "bench", "--experiment", "z" }).status == 2);
    CHECK(cli({ "sample", asset_path("decay.pec"), "-q", "F@1", "-M", "0" }).status == 2);
    CHECK(cli({ "--help" }).status == 0);
}

TEST_CASE("cli run and report")
{
    const auto log_path = scratch("avatea.jsonl").string();
    const auto csv_path = scratch("avatea.csv").string();
    const auto run = cli({ "run", asset_path("avatea.pec"), "--events", asset_path("avatea_events.jsonl"), "--cooldown",
                           "0", "--out", log_path });
    CHECK(run.status == 0);
    CHECK(run.out.find("4 decisions, 0 suppressed") != std::string::npos);
    const auto again = cli({ "run", asset_path("avatea.pec"), "--events", asset_path("avatea_events.jsonl"),
                             "--cooldown", "0" });
    CHECK(again.out == testing::read_text(log_path));

    const auto report = cli({ "report", log_path, "--thresholds", "0.3", "--csv", csv_path });
    CHECK(report.status == 0);
    CHECK(report.out.find("TaskCorrect above threshold 10/13 instants (76.9%)") != std::string::npos);
    CHECK(report.out.find("instant 4: PlaySound because Engagement in [0, 0.3]") != std::string::npos);
    CHECK(testing::read_text(csv_path).rfind("instant,Engagement,TaskCorrect\n", 0) == 0);
    CHECK(cli({ "report", log_path, "--thresholds", "Bogus=1" }).status == 2);
}

TEST_CASE("cli bench")
{
    const auto bench = cli({ "bench", "--experiment", "b", "--param", "1", "--horizon", "3", "--engine", "exact" });
    CHECK(bench.status == 0);
    CHECK(bench.out.rfind("experiment,param,engine,instant,seconds,value\n", 0) == 0);
    std::istringstream in{ bench.out };
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 5);
    CHECK(cli({ "bench", "--experiment", "b", "--engine", "warp" }).status == 2);
}
