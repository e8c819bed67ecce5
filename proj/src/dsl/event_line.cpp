#include "cursor.hpp"
#include "flat_json.hpp"

#include <charconv>

namespace pec::dsl
{

using namespace detail;

namespace
{

ParseDiagnostic diagnostic(std::string message, std::string_view line, std::string expected = {})
{
    return ParseDiagnostic{ Severity::error, std::move(message), SourceSpan{ 0, line.size(), 1, 1 },
                            std::move(expected) };
}

Parsed<EventRecord> parse_json_event(std::string_view line)
{
    Parsed<EventRecord> result;
    const FlatObject object = parse_flat_object(line);
    if (!object.error.empty()) {
        result.diagnostics.push_back(diagnostic(object.error, line));
        return result;
    }
    const auto& members = object.members;
    EventRecord record;

    const auto instant = members.find("instant");
    if (instant == members.end()) {
        result.diagnostics.push_back(diagnostic("event has no \"instant\"", line));
        return result;
    }
    if (instant->second.kind == JsonScalar::Kind::negative_integer) {
        result.diagnostics.push_back(diagnostic("negative instant " + instant->second.text, line));
        return result;
    }
    const auto& digits = instant->second.text;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), record.instant);
    if (instant->second.kind != JsonScalar::Kind::unsigned_integer || ec != std::errc{} ||
        ptr != digits.data() + digits.size()) {
        result.diagnostics.push_back(diagnostic("\"instant\" must be a non-negative integer", line));
        return result;
    }

    const auto action = members.find("action");
    if (action == members.end() || action->second.kind != JsonScalar::Kind::string || action->second.text.empty()) {
        result.diagnostics.push_back(diagnostic("event needs a string \"action\"", line));
        return result;
    }
    record.action = action->second.text;

    if (const auto prob = members.find("prob"); prob != members.end()) {
        const auto kind = prob->second.kind;
        const bool numeric = kind == JsonScalar::Kind::unsigned_integer || kind == JsonScalar::Kind::decimal ||
                             kind == JsonScalar::Kind::negative_integer || kind == JsonScalar::Kind::string;
        std::optional<Rational> value;
        if (numeric && kind != JsonScalar::Kind::negative_integer)
            value = Rational::parse(prob->second.text);
        if (!value) {
            result.diagnostics.push_back(diagnostic("malformed probability '" + prob->second.text + "'", line));
            return result;
        }
        if (!value->is_probability()) {
            result.diagnostics.push_back(diagnostic("probability " + prob->second.text + " is outside [0, 1]", line));
            return result;
        }
        record.probability = *value;
    }
    result.value = std::move(record);
    return result;
}

Parsed<EventRecord> parse_dsl_event(std::string_view line)
{
    Parsed<EventRecord> result;
    const auto tokens = tokenize(line);
    Cursor c{ tokens, 0, tokens.size() - 1 };
    try {
        EventRecord record;
        record.action = std::string{ c.expect_name("an action name").text };
        c.expect("occurs-at");
        record.instant = c.expect_instant();
        if (c.accept("with-prob"))
            record.probability = c.expect_probability();
        if (!c.at_end())
            c.fail(c.peek(), "unexpected " + describe(c.peek()), "end of line");
        result.value = std::move(record);
    } catch (const SyntaxError& e) {
        result.diagnostics.push_back(e.diagnostic);
    }
    return result;
}

} // namespace

Parsed<EventRecord> parse_event_line(std::string_view line)
{
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && line[first] == '{')
        return parse_json_event(line);
    return parse_dsl_event(line);
}

} // namespace pec::dsl
