#include "cursor.hpp"

#include <array>
#include <charconv>

namespace pec::dsl
{

namespace
{

constexpr std::array statement_keywords{
    std::string_view{ "takes-values" },    std::string_view{ "initially-one-of" },
    std::string_view{ "causes-one-of" },   std::string_view{ "causes" },
    std::string_view{ "occurs-at" },       std::string_view{ "performed-at" },
    std::string_view{ "senses" },          std::string_view{ "instants" },
    std::string_view{ "agent-action" },    std::string_view{ "environment-action" },
};

constexpr std::array other_reserved{
    std::string_view{ "with-prob" },     std::string_view{ "if-believes" }, std::string_view{ "with-accuracies" },
    std::string_view{ "every-instant" }, std::string_view{ "true" },        std::string_view{ "false" },
};

} // namespace

bool is_reserved(std::string_view word)
{
    for (auto keyword : statement_keywords)
        if (keyword == word)
            return true;
    for (auto keyword : other_reserved)
        if (keyword == word)
            return true;
    return false;
}

std::string format(const ParseDiagnostic& diagnostic, std::string_view origin)
{
    std::string text{ origin };
    text += ":" + std::to_string(diagnostic.span.line) + ":" + std::to_string(diagnostic.span.column) + ": ";
    text += diagnostic.severity == Severity::error ? "error: " : "warning: ";
    text += diagnostic.message;
    if (!diagnostic.expected.empty())
        text += " (expected " + diagnostic.expected + ")";
    return text;
}

namespace detail
{

bool is_statement_keyword(std::string_view word)
{
    for (auto keyword : statement_keywords)
        if (keyword == word)
            return true;
    return false;
}

Cursor::Cursor(const std::vector<Token>& tokens, std::size_t begin, std::size_t end)
    : tokens_{ tokens }, pos_{ begin }, end_{ end }
{
    end_token_ = Token{ TokenKind::end, {}, tokens_[end_].span };
    end_token_.span.end = end_token_.span.begin;
}

const Token& Cursor::peek(std::size_t ahead) const
{
    return pos_ + ahead < end_ ? tokens_[pos_ + ahead] : end_token_;
}

const Token& Cursor::take()
{
    const Token& token = peek();
    if (pos_ < end_)
        ++pos_;
    return token;
}

bool Cursor::accept(std::string_view text)
{
    if (peek().is(text) && peek().kind != TokenKind::invalid) {
        ++pos_;
        return true;
    }
    return false;
}

const Token& Cursor::expect(std::string_view text)
{
    const Token& token = peek();
    if (!token.is(text) || token.kind == TokenKind::invalid)
        fail(token, "unexpected " + describe(token), "'" + std::string{ text } + "'");
    return take();
}

const Token& Cursor::expect_name(std::string_view what)
{
    const Token& token = peek();
    if (token.kind != TokenKind::name)
        fail(token, "unexpected " + describe(token), std::string{ what });
    if (is_reserved(token.text))
        fail(token, "keyword " + describe(token) + " cannot be used as a name", std::string{ what });
    return take();
}

Instant Cursor::expect_instant()
{
    const Token& token = peek();
    if (token.kind != TokenKind::number || token.text.find('.') != std::string_view::npos)
        fail(token, "unexpected " + describe(token), "an instant (non-negative integer)");
    Instant value = 0;
    const auto* first = token.text.data();
    const auto* last = first + token.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        fail(token, "instant " + describe(token) + " is out of range");
    return take(), value;
}

Probability Cursor::expect_probability()
{
    const Token& first = peek();
    if (first.kind != TokenKind::number)
        fail(first, "unexpected " + describe(first), "a probability");
    take();
    std::string text{ first.text };
    SourceSpan span = first.span;
    if (peek().is("/") && peek().kind == TokenKind::symbol) {
        take();
        const Token& denominator = peek();
        if (denominator.kind != TokenKind::number)
            fail(denominator, "malformed probability", "a denominator");
        take();
        text += "/";
        text += denominator.text;
        span.end = denominator.span.end;
    }
    const auto value = Rational::parse(text);
    if (!value)
        throw SyntaxError{ ParseDiagnostic{ Severity::error, "malformed probability '" + text + "'", span, {} } };
    if (!value->is_probability())
        throw SyntaxError{ ParseDiagnostic{ Severity::error, "probability " + text + " is outside [0, 1]", span, {} } };
    return *value;
}

void Cursor::fail(const Token& at, std::string message, std::string expected) const
{
    throw SyntaxError{ ParseDiagnostic{ Severity::error, std::move(message), at.span, std::move(expected) } };
}

namespace
{

class FormulaParser
{
public:
    FormulaParser(Cursor& cursor, bool with_instants) : cursor_{ cursor }, with_instants_{ with_instants } {}

    Formula parse_or()
    {
        std::vector<Formula> operands{ parse_and() };
        while (cursor_.accept("|"))
            operands.push_back(parse_and());
        return operands.size() == 1 ? operands.front() : Formula::disjunction(std::move(operands));
    }

private:
    Formula parse_and()
    {
        std::vector<Formula> operands{ parse_unary() };
        while (cursor_.accept("&"))
            operands.push_back(parse_unary());
        return operands.size() == 1 ? operands.front() : Formula::conjunction(std::move(operands));
    }

    Formula parse_unary()
    {
        if (++depth_ > max_depth)
            cursor_.fail(cursor_.peek(), "formula nested too deeply");
        Formula result;
        if (cursor_.accept("!")) {
            result = Formula::negation(parse_unary());
        } else if (cursor_.accept("(")) {
            result = parse_or();
            cursor_.expect(")");
        } else {
            result = parse_atom();
        }
        --depth_;
        return result;
    }

    Formula parse_atom()
    {
        const Token& head = cursor_.peek();
        if (head.is("true") && head.kind == TokenKind::name) {
            cursor_.take();
            return Formula::top();
        }
        if (head.is("false") && head.kind == TokenKind::name) {
            cursor_.take();
            return Formula::bottom();
        }
        const Token& name = cursor_.expect_name("a fluent or action name");
        Formula::Atom atom{ std::string{ name.text }, std::nullopt, std::nullopt };
        if (cursor_.accept("=")) {
            const Token& value = cursor_.peek();
            if (value.kind != TokenKind::name)
                cursor_.fail(value, "unexpected " + describe(value), "a value name");
            atom.value = std::string{ cursor_.take().text };
        }
        if (with_instants_) {
            if (!cursor_.peek().is("@"))
                cursor_.fail(cursor_.peek(), "atom '" + atom.name + "' is missing an instant annotation", "'@'");
            cursor_.take();
            atom.instant = cursor_.expect_instant();
        } else if (cursor_.peek().is("@")) {
            cursor_.fail(cursor_.peek(), "belief conditions refer to the current instant; drop '@'");
        }
        return Formula::atom(std::move(atom));
    }

    static constexpr int max_depth = 256;

    Cursor& cursor_;
    bool with_instants_;
    int depth_ = 0;
};

Parsed<Formula> parse_standalone(std::string_view text, bool with_instants)
{
    Parsed<Formula> result;
    const auto tokens = tokenize(text);
    Cursor cursor{ tokens, 0, tokens.size() - 1 };
    try {
        if (cursor.at_end())
            cursor.fail(cursor.peek(), "empty formula", "a formula");
        Formula formula = parse_formula(cursor, with_instants);
        if (!cursor.at_end())
            cursor.fail(cursor.peek(), "unexpected " + describe(cursor.peek()), "end of formula");
        result.value = std::move(formula);
    } catch (const SyntaxError& error) {
        result.diagnostics.push_back(error.diagnostic);
    }
    return result;
}

} // namespace

Formula parse_formula(Cursor& cursor, bool with_instants)
{
    return FormulaParser{ cursor, with_instants }.parse_or();
}

} // namespace detail

Parsed<Formula> parse_query(std::string_view text)
{
    return detail::parse_standalone(text, true);
}

Parsed<Formula> parse_condition_formula(std::string_view text)
{
    return detail::parse_standalone(text, false);
}

} // namespace pec::dsl
