#include "lexer.hpp"

namespace pec::dsl::detail
{

namespace
{

bool is_alpha(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

bool is_word(char c)
{
    return is_alpha(c) || is_digit(c);
}

class Scanner
{
public:
    explicit Scanner(std::string_view text) : text_{ text } {}

    std::vector<Token> run()
    {
        std::vector<Token> tokens;
        for (;;) {
            skip_blank();
            if (pos_ >= text_.size())
                break;
            tokens.push_back(next());
        }
        tokens.push_back(Token{ TokenKind::end, {}, span_from(pos_) });
        return tokens;
    }

private:
    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            line_start_ = pos_ + 1;
        }
        ++pos_;
    }

    void skip_blank()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else {
                break;
            }
        }
    }

    SourceSpan span_from(std::size_t begin) const
    {
        return SourceSpan{ begin, begin, line_, begin - line_start_ + 1 };
    }

    Token make(TokenKind kind, std::size_t begin)
    {
        Token token{ kind, text_.substr(begin, pos_ - begin), span_from(begin) };
        token.span.end = pos_;
        return token;
    }

    Token next()
    {
        const std::size_t begin = pos_;
        const char c = text_[pos_];
        if (is_alpha(c)) {
            while (pos_ < text_.size() && is_word(text_[pos_]))
                advance();
            // Hyphenated keywords: a hyphen continues the word only if a word character follows.
            while (pos_ + 1 < text_.size() && text_[pos_] == '-' && is_word(text_[pos_ + 1])) {
                advance();
                while (pos_ < text_.size() && is_word(text_[pos_]))
                    advance();
            }
            return make(TokenKind::name, begin);
        }
        if (is_digit(c)) {
            while (pos_ < text_.size() && is_digit(text_[pos_]))
                advance();
            if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
                advance();
                while (pos_ < text_.size() && is_digit(text_[pos_]))
                    advance();
            }
            return make(TokenKind::number, begin);
        }
        if (c == '.' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
            advance();
            advance();
            return make(TokenKind::symbol, begin);
        }
        switch (c) {
        case '{':
        case '}':
        case '(':
        case ')':
        case '[':
        case ']':
        case ',':
        case '!':
        case '&':
        case '|':
        case '@':
        case '=':
        case '/':
            advance();
            return make(TokenKind::symbol, begin);
        default: break;
        }
        // Consume one UTF-8 sequence so a multibyte character yields one token.
        advance();
        while (pos_ < text_.size() && (static_cast<unsigned char>(text_[pos_]) & 0xC0U) == 0x80U)
            advance();
        return make(TokenKind::invalid, begin);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t line_start_ = 0;
};

} // namespace

std::vector<Token> tokenize(std::string_view text)
{
    return Scanner{ text }.run();
}

std::string describe(const Token& token)
{
    switch (token.kind) {
    case TokenKind::end: return "end of input";
    case TokenKind::invalid: {
        std::string shown;
        for (unsigned char c : token.text) {
            if (c >= 0x20 && c < 0x7F) {
                shown += static_cast<char>(c);
            } else {
                static constexpr char hex[] = "0123456789abcdef";
                shown += "\\x";
                shown += hex[c >> 4U];
                shown += hex[c & 0xFU];
            }
        }
        return "'" + shown + "'";
    }
    default: return "'" + std::string{ token.text } + "'";
    }
}

} // namespace pec::dsl::detail
