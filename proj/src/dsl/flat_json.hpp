#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace pec::dsl::detail
{

/// A scalar member of a one-level JSON object. Numbers keep their source
/// text so decimals can be read as exact rationals.
struct JsonScalar
{
    enum class Kind
    {
        string,
        unsigned_integer,
        negative_integer,
        decimal,
        boolean,
        null,
        nested
    };

    Kind kind;
    std::string text;
};

struct FlatObject
{
    std::map<std::string, JsonScalar> members;
    std::string error; // empty on success
};

/// Parses `{"key": scalar, ...}`. Nested arrays/objects are kept as `nested`.
FlatObject parse_flat_object(std::string_view text);

} // namespace pec::dsl::detail
