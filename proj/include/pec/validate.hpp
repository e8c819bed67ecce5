#pragma once

#include "pec/domain.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pec
{

enum class Severity
{
    error,
    warning
};

struct Issue
{
    Severity severity;
    std::string code; // stable identifier, e.g. "overlapping-cprops"
    std::string message;
};

struct ValidationReport
{
    std::vector<Issue> issues;

    [[nodiscard]] bool ok() const { return error_count() == 0; }
    [[nodiscard]] std::size_t error_count() const;
    [[nodiscard]] std::size_t warning_count() const;
    [[nodiscard]] std::size_t count(std::string_view code) const;
    [[nodiscard]] bool has(std::string_view code) const { return count(code) > 0; }
};

/// Structural and probabilistic checks. Never throws; the report is the result.
ValidationReport validate_domain(const Domain& domain);

} // namespace pec
