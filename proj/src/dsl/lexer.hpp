#pragma once

#include "pec/dsl.hpp"

#include <string_view>
#include <vector>

namespace pec::dsl::detail
{

enum class TokenKind
{
    name,    // identifiers and keywords, hyphens allowed inside
    number,  // `12` or `0.25`
    symbol,  // { } ( ) [ ] , ! & | @ = / ..
    invalid, // any byte the grammar does not know
    end
};

struct Token
{
    TokenKind kind = TokenKind::end;
    std::string_view text;
    SourceSpan span;

    [[nodiscard]] bool is(std::string_view s) const { return kind != TokenKind::end && text == s; }
};

/// The final token is always `end`. Invalid bytes become `invalid` tokens
/// rather than stopping the scan.
std::vector<Token> tokenize(std::string_view text);

std::string describe(const Token& token);

} // namespace pec::dsl::detail
