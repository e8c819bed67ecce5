#include "support/assets.hpp"
#include "support/oracle.hpp"

#include "pec/exact.hpp"
#include "pec/session.hpp"

#include <doctest.h>

#include <cmath>

using namespace pec;
using pec::testing::load_asset;
using pec::testing::q;
using pec::testing::r;

namespace
{

World scenario_world(const Domain& d, std::initializer_list<std::pair<bool, bool>> steps)
{
    World w;
    for (const auto& [att, tracking] : steps) {
        Step s{ State{ { d.literal("Attention", att).value } }, {} };
        if (tracking)
            s.occurrences.insert(d.action_id("TrackObject"));
        w.steps.push_back(s);
    }
    return w;
}

/// (1 - 0.9^i) by repeated multiplication.
Probability decay_closed_form(Instant i)
{
    Probability stay{ 1 };
    for (Instant k = 0; k < i; ++k)
        stay *= r("0.9");
    return Probability{ 1 } - stay;
}

} // namespace

TEST_CASE("scenario 1 query values")
{
    const Domain d = load_asset("scenario1.pec");
    CHECK(query(d, q("Attention@2")) == Rational(6331, 40000));
    CHECK(query(d, q("Attention@1")) == Rational(13, 40));
    CHECK(query(d, q("Attention@0")) == 1);
    CHECK(query(d, q("PlaySound@2")) == 0);
    CHECK(query(d, Formula::top()) == 1);
}

TEST_CASE("scenario 1 worlds")
{
    const Domain d = load_asset("scenario1.pec");
    const Measure m = enumerate_worlds(d);
    CHECK(m.worlds.size() == 8);
    CHECK(m.total() == 1);
    for (const auto& w : m.worlds)
        CHECK(w.weight > 0);

    const World w1 = scenario_world(d, { { true, true }, { true, false }, { false, false } });
    const World w2 = scenario_world(d, { { true, false }, { true, false }, { true, false } });
    CHECK(world_weight(d, w1) == r("0.19575"));
    CHECK(world_weight(d, w2) == r("0.006525"));

    // attention cannot return without tracking
    const World bad = scenario_world(d, { { true, false }, { false, false }, { true, false } });
    CHECK(world_weight(d, bad) == 0);
}

TEST_CASE("scenario 1 plan does not fire")
{
    const Domain d = load_asset("scenario1.pec");
    const ResolvedPlan plan = resolve_plan(d);
    REQUIRE(plan.firings.size() == 1);
    CHECK(plan.firings[0].instant == 2);
    CHECK_FALSE(plan.firings[0].fired);
    CHECK(*plan.firings[0].belief == Rational(6331, 40000));
    CHECK_FALSE(plan.fired(d.action_id("PlaySound"), 2));
    CHECK(apply_plan(d, plan).pprops.empty());
}

TEST_CASE("plan fires when the belief falls inside the interval")
{
    Domain d = load_asset("scenario1.pec");
    d.pprops[0].condition->upper = r("0.2");
    const ResolvedPlan plan = resolve_plan(d);
    CHECK(plan.fired(d.action_id("PlaySound"), 2));
    CHECK(query(d, q("PlaySound@2")) == 1);
}

TEST_CASE("query errors")
{
    const Domain d = load_asset("scenario1.pec");
    CHECK_THROWS_AS(query(d, q("Attention@3")), DomainError);
    CHECK_THROWS_AS(query(d, q("Unknown@1")), DomainError);
    const Domain noise = load_asset("noise_a.pec");
    ExactOptions small;
    small.max_worlds = 1000;
    CHECK_THROWS_AS(query(noise, q("F@20"), small), ResourceLimitError);
}

TEST_CASE("decay domain against the closed form")
{
    const Domain d = load_asset("decay.pec");
    for (Instant i : { 0u, 1u, 2u, 5u, 9u }) {
        CAPTURE(i);
        CHECK(query(d, q("!F@" + std::to_string(i))) == decay_closed_form(i));
    }
}

TEST_CASE("state distribution matches the oracle")
{
    const Domain d = load_asset("decay.pec");
    for (Instant i = 0; i <= 4; ++i)
        CHECK(state_distribution(d, i) == testing::oracle_distribution(d, i));
}

TEST_CASE("toy domain world count is 2^N")
{
    for (Instant n = 1; n <= 10; ++n) {
        CAPTURE(n);
        const Domain d = session::toy_domain(n);
        CHECK(enumerate_worlds(d).worlds.size() == (std::size_t{ 1 } << n));
        if (n <= 8)
            CHECK(testing::oracle_world_count(d) == (std::size_t{ 1 } << n));
    }
}

TEST_CASE("sampling")
{
    const Domain decay = load_asset("decay.pec");
    SUBCASE("tautology is exactly one")
    {
        CHECK(sample_query(decay, Formula::top(), 50, 3).estimate == 1);
    }
    SUBCASE("seeded and close to the exact value")
    {
        const auto a = sample_query(decay, q("!F@15"), 10000, 7);
        const auto b = sample_query(decay, q("!F@15"), 10000, 7);
        CHECK(a.estimate == b.estimate);
        CHECK(a.samples == 10000);
        CHECK(std::abs(a.estimate.to_double() - (1 - std::pow(0.9, 15))) <= 0.02);
        CHECK(a.std_error == doctest::Approx(0.005));
    }
    SUBCASE("scenario 1 once the plan is resolved")
    {
        const Domain d = load_asset("scenario1.pec");
        CHECK_THROWS_AS(sample_query(d, q("Attention@2"), 10, 1), PreconditionError);
        const Domain resolved = apply_plan(d, resolve_plan(d));
        const auto e = sample_query(resolved, q("Attention@2"), 100000, 11);
        CHECK(std::abs(e.estimate.to_double() - 0.158275) <= 0.01);
    }
    SUBCASE("zero samples")
    {
        CHECK_THROWS_AS(sample_query(decay, q("F@1"), 0, 1), PreconditionError);
    }
}

TEST_CASE("exact engine against the brute-force oracle on the assets")
{
    for (const char* name : { "decay.pec", "noise_a.pec" }) {
        CAPTURE(name);
        Domain d = load_asset(name);
        d.horizon = 6;
        std::erase_if(d.narrative, [](const OProp& o) { return o.instant > 6; });
        for (const char* text : { "F@3", "!F@6", "F@2 & !F@4", "F@1 | F@5" })
            CHECK(query(d, q(text)) == testing::oracle_query(d, q(text)));
    }
}
