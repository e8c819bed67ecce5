#include "support/assets.hpp"
#include "support/random_domain.hpp"

#include "pec/dsl.hpp"
#include "pec/validate.hpp"

#include <doctest.h>

using namespace pec;
using pec::testing::load_asset;
using pec::testing::r;

namespace
{

std::vector<std::string> messages(const dsl::Parsed<Domain>& parsed)
{
    std::vector<std::string> out;
    for (const auto& d : parsed.diagnostics)
        out.push_back(d.message);
    return out;
}

bool mentions(const dsl::Parsed<Domain>& parsed, const std::string& needle)
{
    for (const auto& m : messages(parsed))
        if (m.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_CASE("scenario 1 parses into the expected structure")
{
    const Domain d = load_asset("scenario1.pec");
    CHECK(d.origin == 0);
    CHECK(d.horizon == 2);
    CHECK(d.fluents().size() == 1);
    CHECK(d.action(d.action_id("PlaySound")).kind == ActionKind::agent);
    CHECK(d.action(d.action_id("TrackObject")).kind == ActionKind::environment);
    CHECK(d.cprops.size() == 2);
    REQUIRE(d.narrative.size() == 2);
    CHECK(d.narrative[0].probability == r("0.25"));
    CHECK(d.narrative[1].instant == 1);
    CHECK(d.narrative[1].probability == r("13/100"));
    REQUIRE(d.pprops.size() == 1);
    REQUIRE(d.pprops[0].condition);
    CHECK(d.pprops[0].condition->upper == r("0.1"));
    CHECK(d.initial.outcomes.size() == 1);
}

TEST_CASE("bundled assets parse without diagnostics")
{
    for (const char* name : { "scenario1.pec", "flu.pec", "avatea.pec", "decay.pec", "noise_a.pec", "noise_b.pec",
                              "noise_c.pec" }) {
        CAPTURE(name);
        const auto parsed = dsl::parse_domain(testing::read_text(testing::asset_path(name)));
        CHECK(parsed.ok());
        CHECK(parsed.diagnostics.empty());
    }
}

TEST_CASE("every-instant expands over the timeline")
{
    const Domain d = load_asset("decay.pec");
    CHECK(d.narrative.size() == 16);
    CHECK(d.narrative.back().instant == 15);
}

TEST_CASE("probability spellings agree")
{
    const char* base = "instants 0..1\nF takes-values {true, false}\nenvironment-action A\n"
                       "initially-one-of {({F}, 1)}\nA causes-one-of {({!F}, 1)}\n";
    const auto a = dsl::parse_domain(std::string{ base } + "A occurs-at 0 with-prob 0.25\n");
    const auto b = dsl::parse_domain(std::string{ base } + "A occurs-at 0 with-prob 25/100\n");
    const auto c = dsl::parse_domain(std::string{ base } + "A occurs-at 0 with-prob 1/4\n");
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    REQUIRE(c.ok());
    CHECK(*a.value == *b.value);
    CHECK(*b.value == *c.value);
    const auto certain = dsl::parse_domain(std::string{ base } + "A occurs-at 0\n");
    REQUIRE(certain.ok());
    CHECK(certain.value->narrative[0].probability == 1);
}

TEST_CASE("diagnostics carry spans and expectations")
{
    const std::string text = "instants 0..1\nF takes-values {true, false}\nenvironment-action A\n"
                             "initially-one-of {({F}, 1)}\nA occurs-at 0 with-prb 0.5\n";
    const auto parsed = dsl::parse_domain(text);
    CHECK_FALSE(parsed.ok());
    REQUIRE_FALSE(parsed.diagnostics.empty());
    const auto& first = parsed.diagnostics.front();
    CHECK(first.span.line == 5);
    CHECK(first.span.begin < first.span.end);
    CHECK(first.span.end <= text.size());
    const std::string line = dsl::format(first, "x.pec");
    CHECK(line.rfind("x.pec:5:", 0) == 0);
    CHECK(line.find("error") != std::string::npos);
}

TEST_CASE("parsing resumes after an error")
{
    const std::string text = "instants 0..1\nF takes-values {true, false}\nenvironment-action A\n"
                             "initially-one-of {({F}, 1)}\n"
                             "A occurs-at 0 with-prob 2/0\n"
                             "A causes-one-of {({F}, 1)\n"
                             "A occurs-at 1 with-prob 0.5\n";
    const auto parsed = dsl::parse_domain(text);
    CHECK_FALSE(parsed.ok());
    CHECK(parsed.diagnostics.size() >= 2);
    CHECK(parsed.diagnostics[0].span.line == 5);
    CHECK(parsed.diagnostics[1].span.line > 5);
}

TEST_CASE("semantic errors")
{
    const std::string head = "instants 0..2\nF takes-values {true, false}\nH takes-values {true, false}\n"
                             "environment-action A\n";
    SUBCASE("incomplete initial outcome")
    {
        const auto p = dsl::parse_domain(head + "initially-one-of {({F}, 1)}\n");
        CHECK_FALSE(p.ok());
        CHECK(mentions(p, "does not mention H"));
    }
    SUBCASE("missing initial")
    {
        CHECK(mentions(dsl::parse_domain(head), "missing initially-one-of"));
    }
    SUBCASE("fluent declared twice")
    {
        CHECK(mentions(dsl::parse_domain(head + "F takes-values {a, b}\ninitially-one-of {({F, H}, 1)}\n"),
                       "declared twice"));
    }
    SUBCASE("undeclared fluent in an effect")
    {
        CHECK(mentions(dsl::parse_domain(head + "initially-one-of {({F, H}, 1)}\nA causes-one-of {({Z}, 1)}\n"),
                       "undeclared"));
    }
    SUBCASE("contradictory condition")
    {
        CHECK(mentions(dsl::parse_domain(head + "initially-one-of {({F, H}, 1)}\n{A, F, !F} causes-one-of {({H}, 1)}\n"),
                       "contradicts"));
    }
    SUBCASE("reserved word as a name")
    {
        const auto p = dsl::parse_domain("instants 0..1\ncauses-one-of takes-values {true, false}\n");
        CHECK_FALSE(p.ok());
    }
}

TEST_CASE("empty input is invalid")
{
    const auto parsed = dsl::parse_domain("");
    CHECK_FALSE(parsed.ok());
    CHECK_FALSE(parsed.diagnostics.empty());
    CHECK(validate_domain(Domain{}).has("missing-initial"));
}

TEST_CASE("query precedence")
{
    const auto parsed = dsl::parse_query("!A@1 & B@2 | C=x@3");
    REQUIRE(parsed.ok());
    const Formula& f = *parsed.value;
    REQUIRE(f.kind() == Formula::Kind::disjunction);
    CHECK(f.operands()[0].kind() == Formula::Kind::conjunction);
    CHECK(f.operands()[0].operands()[0].kind() == Formula::Kind::negation);
    CHECK(f.operands()[1].atom_value().value == "x");
    CHECK(f.operands()[1].atom_value().instant == 3u);
    CHECK(f.to_string() == "!A@1 & B@2 | C=x@3");
    CHECK(dsl::parse_query("true").value->is_top());
    CHECK(dsl::parse_query("false").value->is_bottom());
    CHECK_FALSE(dsl::parse_query("A").ok());
    CHECK_FALSE(dsl::parse_query("A@1 &").ok());
    CHECK_FALSE(dsl::parse_condition_formula("A@1").ok());
    CHECK(dsl::parse_condition_formula("Engagement & !TaskCorrect").ok());
}

TEST_CASE("event lines")
{
    const auto json = dsl::parse_event_line(R"({"instant":7,"action":"EyesNotFollowingTarget","prob":0.07})");
    REQUIRE(json.ok());
    CHECK(*json.value == dsl::EventRecord{ "EyesNotFollowingTarget", 7, r("7/100") });
    const auto rational = dsl::parse_event_line(R"({"instant": 2, "action": "A", "prob": "1/3"})");
    REQUIRE(rational.ok());
    CHECK(rational.value->probability == Rational(1, 3));
    const auto dsl_line = dsl::parse_event_line("A occurs-at 3");
    REQUIRE(dsl_line.ok());
    CHECK(*dsl_line.value == dsl::EventRecord{ "A", 3, 1 });
    const auto with_prob = dsl::parse_event_line("A occurs-at 3 with-prob 0.5");
    REQUIRE(with_prob.ok());
    CHECK(with_prob.value->probability == r("1/2"));
    CHECK_FALSE(dsl::parse_event_line(R"({"instant":7})").ok());
    CHECK_FALSE(dsl::parse_event_line(R"({"instant":-1,"action":"A"})").ok());
    CHECK_FALSE(dsl::parse_event_line("{not json").ok());
    CHECK_FALSE(dsl::parse_event_line("A occurs-at").ok());
}

TEST_CASE("reserved words")
{
    CHECK(dsl::is_reserved("causes-one-of"));
    CHECK(dsl::is_reserved("every-instant"));
    CHECK_FALSE(dsl::is_reserved("Attention"));
}

TEST_CASE("bundled assets round-trip")
{
    for (const char* name : { "scenario1.pec", "flu.pec", "avatea.pec", "decay.pec", "noise_b.pec" }) {
        CAPTURE(name);
        const Domain d = load_asset(name);
        const auto again = dsl::parse_domain(dsl::serialize_domain(d));
        REQUIRE(again.ok());
        CHECK(*again.value == d);
    }
}

TEST_CASE("random domains round-trip")
{
    testing::Rng rng{ 2024 };
    testing::RandomDomainOptions options;
    options.max_fluents = 3;
    options.max_actions = 3;
    options.multi_valued = true;
    options.agent_actions = true;
    options.belief_pprops = true;
    options.sensing = true;
    for (int i = 0; i < 100; ++i) {
        const Domain d = testing::random_domain(rng, options);
        const std::string text = dsl::serialize_domain(d);
        CAPTURE(text);
        const auto again = dsl::parse_domain(text);
        REQUIRE(again.ok());
        CHECK(*again.value == d);
    }
}
