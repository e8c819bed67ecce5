#include "support/assets.hpp"

#include "pec/progression.hpp"
#include "pec/sensing.hpp"

#include <doctest.h>

#include <cmath>
#include <tuple>

using namespace pec;
using pec::testing::load_asset;
using pec::testing::r;

namespace
{

/// Bayes by hand: P(F | result).
Probability by_hand(const Probability& p, const Probability& a, const Probability& b, bool positive)
{
    const Probability one{ 1 };
    const Probability like_true = positive ? a : one - a;
    const Probability like_false = positive ? b : one - b;
    return p * like_true / (p * like_true + (one - p) * like_false);
}

Domain sensor_domain(const std::string& prior, const std::string& a, const std::string& b, int times)
{
    std::string text = "instants 0.." + std::to_string(times) + "\nFlu takes-values {true, false}\n";
    const Probability p = r(prior.c_str());
    text += "initially-one-of {";
    if (p > 0)
        text += "({Flu}, " + p.fraction() + ")";
    if (p > 0 && p < 1)
        text += ", ";
    if (p < 1)
        text += "({!Flu}, " + (Probability{ 1 } - p).fraction() + ")";
    text += "}\n";
    text += "Test senses Flu with-accuracies ((" + a + ", " + (Probability{ 1 } - r(a.c_str())).fraction() + "), (" + b +
            ", " + (Probability{ 1 } - r(b.c_str())).fraction() + "))\n";
    for (int i = 0; i < times; ++i)
        text += "Test performed-at " + std::to_string(i) + "\n";
    auto parsed = dsl::parse_domain(text);
    REQUIRE_MESSAGE(parsed.ok(), text);
    return std::move(*parsed.value);
}

Probability flu(const Domain& d, const BeliefState& b)
{
    return b.marginal(d.literal("Flu", true));
}

} // namespace

TEST_CASE("flu translation values")
{
    const Domain d = load_asset("flu.pec");
    const SProp& sprop = sprop_for(d, d.action_id("Test"));
    const Observation first{ d.action_id("Test"), 0, SenseResult::positive };
    const auto t1 = translate_observation(d, sprop, first, r("0.7"));
    CHECK(t1.action == "Test_pos_0");
    CHECK(t1.probability == Rational(7, 17));
    CHECK(t1.effect == d.literal("Flu", true));
    CHECK(std::abs(t1.probability.to_double() - 0.412) <= 5e-4);

    const BeliefState b1 = apply_observation(d, initial_belief(d), first);
    CHECK(flu(d, b1) == Rational(14, 17));
    const Observation second{ d.action_id("Test"), 1, SenseResult::positive };
    const auto t2 = translate_observation(d, sprop, second, flu(d, b1));
    CHECK(t2.action == "Test_pos_1");
    CHECK(t2.probability == Rational(14, 31));
    CHECK(std::abs(t2.probability.to_double() - 0.452) <= 5e-4);
    const BeliefState b2 = apply_observation(d, b1, second);
    CHECK(flu(d, b2) == Rational(28, 31));
    CHECK(std::abs(flu(d, b2).to_double() - 0.903) <= 1e-3);
}

TEST_CASE("negative results")
{
    const Domain d = load_asset("flu.pec");
    const SProp& sprop = sprop_for(d, d.action_id("Test"));
    const Observation neg{ d.action_id("Test"), 0, SenseResult::negative };
    const auto t = translate_observation(d, sprop, neg, r("0.7"));
    CHECK(t.action == "Test_neg_0");
    CHECK(t.effect == d.literal("Flu", false));
    CHECK(flu(d, apply_observation(d, initial_belief(d), neg)) == by_hand(r("0.7"), r("0.8"), r("0.4"), false));
    CHECK(bayes_posterior(r("0.7"), sprop, SenseResult::negative) == r("0.4375"));
    CHECK(observation_likelihood(r("0.7"), sprop, SenseResult::positive) == r("0.68"));
}

TEST_CASE("flu forecast table")
{
    const OutcomeForecast f = forecast_outcomes(load_asset("flu.pec"));
    CHECK(f.prior == r("0.7"));
    CHECK(f.instants == std::vector<Instant>{ 0, 1 });
    REQUIRE(f.rows.size() == 4);
    const double expected[4][2] = { { 0.136, 0.206 }, { 0.184, 0.609 }, { 0.184, 0.609 }, { 0.496, 0.903 } };
    for (std::size_t i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK(std::abs(f.rows[i].probability.to_double() - expected[i][0]) <= 1e-3);
        CHECK(std::abs(f.rows[i].posterior.to_double() - expected[i][1]) <= 1e-3);
    }
    CHECK(f.rows[0].results == std::vector{ SenseResult::negative, SenseResult::negative });
    CHECK(f.rows[1].results == std::vector{ SenseResult::negative, SenseResult::positive });
    CHECK(f.rows[3].posterior == Rational(28, 31));
    CHECK(f.rows[0].probability == Rational(17, 125));
}

TEST_CASE("forecast invariants")
{
    for (const auto& [p, a, b, n] : std::vector<std::tuple<std::string, std::string, std::string, int>>{
             { "0.7", "0.8", "0.4", 1 }, { "0.7", "0.8", "0.4", 3 }, { "0.5", "1", "0", 1 }, { "0.3", "0.2", "0.9", 2 },
             { "0", "0.8", "0.4", 2 }, { "1", "0.8", "0.4", 2 } }) {
        CAPTURE(p);
        CAPTURE(n);
        const Domain d = sensor_domain(p, a, b, n);
        const OutcomeForecast f = forecast_outcomes(d);
        Probability total;
        Probability expectation;
        for (const auto& row : f.rows) {
            total += row.probability;
            expectation += row.probability * row.posterior;
            CHECK(row.posterior.is_probability());
            if (f.prior == 0 || f.prior == 1)
                if (!row.probability.is_zero())
                    CHECK(row.posterior == f.prior);
        }
        CHECK(f.rows.size() == (std::size_t{ 1 } << n));
        CHECK(total == 1);
        CHECK(expectation == f.prior);
    }
}

TEST_CASE("single sensing by hand")
{
    const OutcomeForecast f = forecast_outcomes(sensor_domain("0.7", "0.8", "0.4", 1));
    REQUIRE(f.rows.size() == 2);
    CHECK(f.rows[1].probability == r("0.68"));
    CHECK(f.rows[1].posterior == Rational(14, 17));
    CHECK(f.rows[0].probability == r("0.32"));
    CHECK(f.rows[0].posterior == r("0.4375"));

    const OutcomeForecast perfect = forecast_outcomes(sensor_domain("0.5", "1", "0", 1));
    CHECK(perfect.rows[1].probability == r("0.5"));
    CHECK(perfect.rows[1].posterior == 1);
    CHECK(perfect.rows[0].posterior == 0);
}

TEST_CASE("order independence on a static fluent")
{
    const OutcomeForecast f = forecast_outcomes(sensor_domain("0.3", "0.9", "0.2", 2));
    CHECK(f.rows[1].posterior == f.rows[2].posterior);
    CHECK(f.rows[1].probability == f.rows[2].probability);
}

TEST_CASE("a < b swaps the translated literal")
{
    const Domain d = sensor_domain("0.4", "0.3", "0.9", 1);
    const SProp& sprop = d.sprops.front();
    const Observation pos{ sprop.action, 0, SenseResult::positive };
    const auto t = translate_observation(d, sprop, pos, r("0.4"));
    CHECK(t.effect == d.literal("Flu", false));
    CHECK(flu(d, apply_observation(d, initial_belief(d), pos)) == by_hand(r("0.4"), r("0.3"), r("0.9"), true));
}

TEST_CASE("impossible observations")
{
    const Domain d = sensor_domain("0", "1", "0", 1);
    const SProp& sprop = d.sprops.front();
    CHECK(observation_likelihood(0, sprop, SenseResult::positive) == 0);
    CHECK_THROWS_AS(bayes_posterior(0, sprop, SenseResult::positive), ImpossibleObservation);
    CHECK_THROWS_AS(apply_observation(d, initial_belief(d), Observation{ sprop.action, 0, SenseResult::positive }),
                    ImpossibleObservation);
}

TEST_CASE("sensing errors")
{
    const Domain d = load_asset("scenario1.pec");
    CHECK_THROWS_AS(sprop_for(d, d.action_id("TrackObject")), DomainError);
    CHECK_THROWS_AS(forecast_outcomes(d), UnsupportedDomain);

    Domain changing = load_asset("flu.pec");
    const auto cure = changing.add_action("Cure", ActionKind::environment);
    changing.cprops.push_back({ Condition{ {}, { { cure, true } } }, { { { changing.literal("Flu", false) }, 1 } } });
    changing.narrative.push_back({ cure, 0, r("0.5") });
    CHECK_THROWS_AS(forecast_outcomes(changing), UnsupportedDomain);
    const Observation obs{ changing.action_id("Test"), 0, SenseResult::positive };
    CHECK_THROWS_AS(apply_observation(changing, initial_belief(changing), obs, TickInput{ 0, { { cure, r("0.5") } } }),
                    UnsupportedDomain);
}
