#include "pec/dsl.hpp"
#include "pec/error.hpp"
#include "pec/session.hpp"

#include <random>
#include <sstream>

namespace pec::session
{

namespace
{

Domain parse_generated(const std::string& text)
{
    auto parsed = dsl::parse_domain(text);
    if (!parsed.ok()) {
        std::string message = "generated domain does not parse:";
        for (const auto& diagnostic : parsed.diagnostics)
            message += "\n" + dsl::format(diagnostic, "<generated>");
        throw Error(message);
    }
    return std::move(*parsed.value);
}

void timeline(std::ostringstream& text, Instant horizon)
{
    text << "instants 0.." << horizon << "\n";
}

void numbered_fluents(std::ostringstream& text, std::size_t count)
{
    for (std::size_t k = 1; k <= count; ++k)
        text << "F" << k << " takes-values {true, false}\n";
}

void all_true(std::ostringstream& text, std::size_t fluents, const std::string& single = {})
{
    text << "initially-one-of {({";
    if (!single.empty())
        text << single;
    for (std::size_t k = 1; k <= fluents; ++k)
        text << (k > 1 || !single.empty() ? ", " : "") << "F" << k;
    text << "}, 1)}\n";
}

void every_instant_actions(std::ostringstream& text, std::size_t actions)
{
    for (std::size_t k = 1; k <= actions; ++k) {
        text << "environment-action A" << k << "\n";
        text << "A" << k << " occurs-at every-instant with-prob 0.5\n";
    }
}

} // namespace

Domain toy_domain(Instant instants)
{
    if (instants == 0)
        throw PreconditionError("the toy domain needs at least one instant");
    std::ostringstream text;
    timeline(text, instants - 1);
    text << "F takes-values {true, false}\n";
    text << "initially-one-of {({F}, 1)}\n";
    text << "environment-action A\n";
    text << "A occurs-at every-instant with-prob 0.5\n";
    return parse_generated(text.str());
}

Domain decay_domain(Instant horizon)
{
    std::ostringstream text;
    timeline(text, horizon);
    text << "F takes-values {true, false}\n";
    text << "initially-one-of {({F}, 1)}\n";
    text << "A causes-one-of {({!F}, 0.2), ({}, 0.8)}\n";
    text << "A occurs-at every-instant with-prob 0.5\n";
    return parse_generated(text.str());
}

Domain actions_domain(std::size_t actions, Instant horizon)
{
    std::ostringstream text;
    timeline(text, horizon);
    text << "F takes-values {true, false}\n";
    all_true(text, 0, "F");
    every_instant_actions(text, actions);
    return parse_generated(text.str());
}

Domain fluents_domain(std::size_t fluents, Instant horizon)
{
    return grid_domain(fluents, 0, horizon);
}

Domain grid_domain(std::size_t fluents, std::size_t actions, Instant horizon)
{
    if (fluents == 0)
        throw PreconditionError("at least one fluent is needed");
    std::ostringstream text;
    timeline(text, horizon);
    numbered_fluents(text, fluents);
    all_true(text, fluents);
    every_instant_actions(text, actions);
    return parse_generated(text.str());
}

Domain initial_conditions_domain(std::size_t conditions, Instant horizon)
{
    constexpr std::size_t fluents = 10;
    if (conditions == 0 || conditions > (std::size_t{ 1 } << fluents))
        throw PreconditionError("the number of initial conditions must lie in 1..1024");
    std::ostringstream text;
    timeline(text, horizon);
    numbered_fluents(text, fluents);
    text << "initially-one-of {";
    for (std::size_t mask = 0; mask < conditions; ++mask) {
        text << (mask > 0 ? ", " : "") << "({";
        for (std::size_t k = 0; k < fluents; ++k)
            text << (k > 0 ? ", " : "") << (((mask >> k) & 1U) != 0 ? "!" : "") << "F" << k + 1;
        text << "}, 1/" << conditions << ")";
    }
    text << "}\n";
    return parse_generated(text.str());
}

Domain density_domain(double density, std::uint64_t seed, Instant horizon)
{
    if (!(density >= 0.0 && density <= 1.0))
        throw PreconditionError("density must lie in [0, 1]");
    constexpr std::size_t n = 5;
    std::ostringstream text;
    timeline(text, horizon);
    numbered_fluents(text, n);
    text << "initially-one-of {({!F1, !F2, !F3, !F4, !F5}, 1)}\n";
    for (std::size_t k = 1; k <= n; ++k)
        text << "environment-action A" << k << "\n";
    for (std::uint32_t subset = 1; subset < (1U << n); ++subset) {
        text << "{";
        for (std::size_t k = 0; k < n; ++k)
            text << (k > 0 ? ", " : "") << (((subset >> k) & 1U) != 0 ? "" : "!") << "A" << k + 1;
        text << "} causes-one-of {({";
        for (std::size_t k = 0; k < n; ++k)
            text << (k > 0 ? ", " : "") << (((subset >> k) & 1U) != 0 ? "" : "!") << "F" << k + 1;
        text << "}, 4/5), ({}, 1/5)}\n";
    }
    std::mt19937_64 rng{ seed };
    for (Instant i = 0; i <= horizon; ++i)
        for (std::size_t k = 1; k <= n; ++k) {
            const double u = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
            if (u < density)
                text << "A" << k << " occurs-at " << i << " with-prob 0.5\n";
        }
    return parse_generated(text.str());
}

} // namespace pec::session
