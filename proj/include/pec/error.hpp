#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pec
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A name or structural reference that does not resolve against the domain.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// State-space, world-count or occurrence-space cap exceeded. Never a silent truncation.
class ResourceLimitError : public Error
{
public:
    using Error::Error;
};

/// Two c-propositions match the same (state, occurrences); only reachable when validation was skipped.
class AmbiguousMatchError : public Error
{
public:
    using Error::Error;
};

class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// An observation with probability zero under the current prior.
class ImpossibleObservation : public Error
{
public:
    using Error::Error;
};

class UnsupportedDomain : public Error
{
public:
    using Error::Error;
};

/// Errors tied to a line of an event stream.
class StreamError : public Error
{
public:
    StreamError(std::size_t line, const std::string& message)
        : Error{ "line " + std::to_string(line) + ": " + message }, line_{ line } {}

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// An event for an instant whose tick has already been closed.
class LateEventError : public Error
{
public:
    using Error::Error;
};

} // namespace pec
