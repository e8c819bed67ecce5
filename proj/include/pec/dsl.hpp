#pragma once

#include "pec/domain.hpp"
#include "pec/formula.hpp"
#include "pec/validate.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pec::dsl
{

struct SourceSpan
{
    std::size_t begin = 0; // byte offsets, end exclusive
    std::size_t end = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct ParseDiagnostic
{
    Severity severity = Severity::error;
    std::string message;
    SourceSpan span;
    std::string expected; // e.g. "'with-prob'"; empty if no useful hint
};

/// `origin:line:col: error: message (expected ...)`
std::string format(const ParseDiagnostic& diagnostic, std::string_view origin = "<input>");

template <typename T>
struct Parsed
{
    std::optional<T> value;
    std::vector<ParseDiagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return value.has_value(); }
};

/// Parses a complete `.pec` source. Never throws; every problem becomes a
/// diagnostic and parsing resumes at the next statement.
Parsed<Domain> parse_domain(std::string_view text);

/// Query syntax: `!` binds tighter than `&`, `&` tighter than `|`; every atom
/// is `Name@I` or `Name=value@I`; `true` and `false` are constants.
Parsed<Formula> parse_query(std::string_view text);

/// Same grammar without instants, as used by `if-believes`.
Parsed<Formula> parse_condition_formula(std::string_view text);

/// Canonical text; parse_domain(serialize_domain(d)) reproduces d exactly.
std::string serialize_domain(const Domain& domain);

struct EventRecord
{
    std::string action;
    Instant instant = 0;
    Probability probability{ 1 };

    bool operator==(const EventRecord&) const = default;
};

/// One event, either `A occurs-at I [with-prob P]` or
/// `{"instant": I, "action": "A", "prob": P}` where P is a number or a
/// rational string. The probability defaults to 1.
Parsed<EventRecord> parse_event_line(std::string_view line);

/// Words with a fixed meaning in the grammar; unusable as names.
bool is_reserved(std::string_view word);

} // namespace pec::dsl
