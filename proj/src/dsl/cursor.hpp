#pragma once

#include "lexer.hpp"

#include "pec/formula.hpp"
#include "pec/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pec::dsl::detail
{

/// Thrown inside the parser only; caught at statement boundaries.
struct SyntaxError
{
    ParseDiagnostic diagnostic;
};

/// Recursive-descent helper over tokens[begin, end).
class Cursor
{
public:
    Cursor(const std::vector<Token>& tokens, std::size_t begin, std::size_t end);

    [[nodiscard]] const Token& peek(std::size_t ahead = 0) const;
    [[nodiscard]] bool at_end() const { return pos_ >= end_; }
    [[nodiscard]] std::size_t position() const { return pos_; }

    const Token& take();
    bool accept(std::string_view text);
    const Token& expect(std::string_view text);
    const Token& expect_name(std::string_view what);

    Instant expect_instant();
    Probability expect_probability();

    [[noreturn]] void fail(const Token& at, std::string message, std::string expected = {}) const;

private:
    const std::vector<Token>& tokens_;
    std::size_t pos_;
    std::size_t end_;
    Token end_token_;
};

/// Parses `a | b & !c ...`. With `with_instants` every atom must carry `@I`,
/// without it `@` is rejected.
Formula parse_formula(Cursor& cursor, bool with_instants);

bool is_statement_keyword(std::string_view word);

} // namespace pec::dsl::detail
