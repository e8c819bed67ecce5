#include "cursor.hpp"

#include "pec/core.hpp"
#include "pec/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <variant>

namespace pec::dsl
{

using namespace detail;

namespace
{

struct RawLiteral
{
    std::string name;
    std::optional<std::string> value;
    bool negated = false;
    SourceSpan span;
};

struct RawOutcome
{
    std::vector<RawLiteral> literals;
    Probability probability;
    SourceSpan span;
};

struct NameRef
{
    std::string name;
    SourceSpan span;
};

struct InstantsStmt
{
    Instant from;
    Instant to;
};

struct ActionDeclStmt
{
    std::vector<NameRef> names;
    ActionKind kind;
};

struct FluentStmt
{
    NameRef name;
    std::vector<NameRef> values;
};

struct IPropStmt
{
    std::vector<RawOutcome> outcomes;
};

struct CPropStmt
{
    std::vector<RawLiteral> condition;
    std::vector<RawOutcome> outcomes;
};

struct OPropStmt
{
    NameRef action;
    std::optional<Instant> instant; // nullopt: every-instant
    Probability probability{ 1 };
};

struct PPropStmt
{
    NameRef action;
    std::optional<Instant> instant;
    std::optional<BeliefCondition> condition;
};

struct SPropStmt
{
    NameRef action;
    NameRef fluent;
    std::array<std::array<Probability, 2>, 2> accuracies;
};

using StatementBody =
    std::variant<InstantsStmt, ActionDeclStmt, FluentStmt, IPropStmt, CPropStmt, OPropStmt, PPropStmt, SPropStmt>;

struct Statement
{
    StatementBody body;
    SourceSpan span;
};

SourceSpan join(SourceSpan first, const SourceSpan& last)
{
    first.end = std::max(first.end, last.end);
    return first;
}

bool is_symbol(const Token& token, std::string_view text)
{
    return token.kind == TokenKind::symbol && token.text == text;
}

bool is_keyword(const Token& token, std::string_view text)
{
    return token.kind == TokenKind::name && token.text == text;
}

bool is_prefix_keyword(const Token& token)
{
    return is_keyword(token, "initially-one-of") || is_keyword(token, "instants") ||
           is_keyword(token, "agent-action") || is_keyword(token, "environment-action");
}

bool is_subject_keyword(const Token& token)
{
    return is_keyword(token, "takes-values") || is_keyword(token, "occurs-at") ||
           is_keyword(token, "performed-at") || is_keyword(token, "senses");
}

bool is_causes(const Token& token)
{
    return is_keyword(token, "causes-one-of") || is_keyword(token, "causes");
}

bool is_plain_name(const Token& token)
{
    return token.kind == TokenKind::name && !is_reserved(token.text);
}

/// Start of the condition that precedes a `causes-one-of` at index `at`.
std::size_t condition_start(const std::vector<Token>& tokens, std::size_t at)
{
    if (at == 0)
        return at;
    if (is_symbol(tokens[at - 1], "}")) {
        int depth = 0;
        for (std::size_t k = at; k-- > 0;) {
            if (is_symbol(tokens[k], "}"))
                ++depth;
            else if (is_symbol(tokens[k], "{") && --depth == 0)
                return k;
        }
        return at;
    }
    std::size_t start = at;
    std::size_t j = at;
    for (;;) {
        if (j == 0 || tokens[j - 1].kind != TokenKind::name)
            return start;
        std::size_t k = j - 1;
        if (k >= 2 && is_symbol(tokens[k - 1], "=") && is_plain_name(tokens[k - 2]))
            k -= 2;
        else if (!is_plain_name(tokens[k]))
            return start;
        while (k > 0 && is_symbol(tokens[k - 1], "!"))
            --k;
        start = k;
        if (k == 0 || !is_symbol(tokens[k - 1], "&"))
            return start;
        j = k - 1;
    }
}

class Parser
{
public:
    explicit Parser(std::string_view text) : tokens_{ tokenize(text) } {}

    Parsed<Domain> run()
    {
        parse_statements();
        Parsed<Domain> result;
        std::optional<Domain> domain;
        if (error_count() == 0)
            domain = build();
        result.diagnostics = std::move(diagnostics_);
        if (domain && std::none_of(result.diagnostics.begin(), result.diagnostics.end(),
                                   [](const ParseDiagnostic& d) { return d.severity == Severity::error; }))
            result.value = std::move(domain);
        return result;
    }

private:
    // ---- syntax ---------------------------------------------------------

    void parse_statements()
    {
        const std::size_t count = tokens_.size() - 1; // without the end token
        std::set<std::size_t> starts;
        for (std::size_t i = 0; i < count; ++i) {
            const Token& token = tokens_[i];
            if (is_prefix_keyword(token))
                starts.insert(i);
            else if (is_subject_keyword(token))
                starts.insert(i > 0 && is_plain_name(tokens_[i - 1]) ? i - 1 : i);
            else if (is_causes(token))
                starts.insert(condition_start(tokens_, i));
        }

        std::vector<std::size_t> bounds(starts.begin(), starts.end());
        if (bounds.empty() || bounds.front() != 0) {
            const std::size_t stop = bounds.empty() ? count : bounds.front();
            if (stop > 0)
                report_junk(0, stop);
        }
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            const std::size_t end = k + 1 < bounds.size() ? bounds[k + 1] : count;
            parse_segment(bounds[k], end);
        }
    }

    void report_junk(std::size_t begin, std::size_t end)
    {
        for (std::size_t i = begin; i < end; ++i) {
            const Token& token = tokens_[i];
            if (token.kind == TokenKind::name && token.text.find('-') != std::string_view::npos &&
                !is_reserved(token.text)) {
                error(token.span, "unknown keyword '" + std::string{ token.text } + "'");
                return;
            }
        }
        const Token& token = tokens_[begin];
        if (token.kind == TokenKind::invalid)
            error(token.span, "invalid character " + describe(token));
        else
            error(token.span, "unexpected " + describe(token), "a statement");
    }

    void parse_segment(std::size_t begin, std::size_t end)
    {
        Cursor cursor{ tokens_, begin, end };
        try {
            const SourceSpan first = tokens_[begin].span;
            StatementBody body = parse_statement(cursor);
            const SourceSpan last = tokens_[cursor.position() - 1].span;
            statements_.push_back(Statement{ std::move(body), join(first, last) });
            if (!cursor.at_end())
                report_junk(cursor.position(), end);
        } catch (const SyntaxError& e) {
            diagnostics_.push_back(e.diagnostic);
        }
    }

    StatementBody parse_statement(Cursor& c)
    {
        const Token& head = c.peek();
        if (is_keyword(head, "instants")) {
            c.take();
            InstantsStmt stmt{};
            stmt.from = c.expect_instant();
            c.expect("..");
            stmt.to = c.expect_instant();
            if (stmt.to < stmt.from)
                c.fail(head, "timeline " + std::to_string(stmt.from) + ".." + std::to_string(stmt.to) + " is empty");
            return stmt;
        }
        if (is_keyword(head, "agent-action") || is_keyword(head, "environment-action")) {
            c.take();
            ActionDeclStmt stmt{ {}, is_keyword(head, "agent-action") ? ActionKind::agent : ActionKind::environment };
            do {
                const Token& name = c.expect_name("an action name");
                stmt.names.push_back(NameRef{ std::string{ name.text }, name.span });
            } while (c.accept(","));
            return stmt;
        }
        if (is_keyword(head, "initially-one-of")) {
            c.take();
            return IPropStmt{ parse_outcomes(c) };
        }
        if (is_keyword(head, "causes-one-of") || is_keyword(head, "causes"))
            c.fail(head, "causal rule without a condition", "a condition before " + describe(head));

        // Statements that start with a subject.
        std::size_t keyword_at = 0;
        for (;; ++keyword_at) {
            const Token& token = c.peek(keyword_at);
            if (token.kind == TokenKind::end || is_subject_keyword(token) || is_causes(token))
                break;
        }
        const Token& keyword = c.peek(keyword_at);
        if (is_causes(keyword)) {
            CPropStmt stmt;
            stmt.condition = parse_condition(c);
            c.take(); // causes keyword
            stmt.outcomes = parse_outcomes(c);
            return stmt;
        }
        if (keyword.kind == TokenKind::end || keyword_at != 1)
            c.fail(head, "unexpected " + describe(head), "a statement");

        const Token& subject = c.expect_name(is_keyword(keyword, "takes-values") ? "a fluent name" : "an action name");
        NameRef subject_ref{ std::string{ subject.text }, subject.span };
        c.take();
        if (is_keyword(keyword, "takes-values")) {
            FluentStmt stmt{ subject_ref, {} };
            c.expect("{");
            do {
                const Token& value = c.peek();
                if (value.kind != TokenKind::name || is_statement_keyword(value.text))
                    c.fail(value, "unexpected " + describe(value), "a value name");
                stmt.values.push_back(NameRef{ std::string{ value.text }, value.span });
                c.take();
            } while (c.accept(","));
            c.expect("}");
            return stmt;
        }
        if (is_keyword(keyword, "occurs-at")) {
            OPropStmt stmt{ subject_ref, parse_schedule(c), Probability{ 1 } };
            if (c.accept("with-prob"))
                stmt.probability = c.expect_probability();
            return stmt;
        }
        if (is_keyword(keyword, "performed-at")) {
            PPropStmt stmt{ subject_ref, parse_schedule(c), std::nullopt };
            if (c.accept("if-believes")) {
                c.expect("(");
                Formula formula = parse_formula(c, false);
                c.expect(",");
                c.expect("[");
                Probability lower = c.expect_probability();
                c.expect(",");
                Probability upper = c.expect_probability();
                const Token& close = c.expect("]");
                if (upper < lower)
                    c.fail(close, "belief interval [" + lower.to_string() + ", " + upper.to_string() + "] is empty");
                c.expect(")");
                stmt.condition = BeliefCondition{ std::move(formula), std::move(lower), std::move(upper) };
            }
            return stmt;
        }
        // senses
        SPropStmt stmt{ subject_ref, {}, {} };
        const Token& fluent = c.expect_name("a fluent name");
        stmt.fluent = NameRef{ std::string{ fluent.text }, fluent.span };
        c.expect("with-accuracies");
        c.expect("(");
        for (std::size_t row = 0; row < 2; ++row) {
            if (row > 0)
                c.expect(",");
            c.expect("(");
            stmt.accuracies[row][0] = c.expect_probability();
            c.expect(",");
            const Token& at = c.peek();
            stmt.accuracies[row][1] = c.expect_probability();
            c.expect(")");
            if (stmt.accuracies[row][0] + stmt.accuracies[row][1] != Probability{ 1 })
                c.fail(at, "accuracy matrix row " + std::to_string(row + 1) + " does not sum to 1");
        }
        c.expect(")");
        return stmt;
    }

    std::optional<Instant> parse_schedule(Cursor& c)
    {
        if (c.accept("every-instant"))
            return std::nullopt;
        return c.expect_instant();
    }

    RawLiteral parse_literal(Cursor& c)
    {
        RawLiteral literal;
        const SourceSpan first = c.peek().span;
        literal.negated = c.accept("!");
        const Token& name = c.expect_name("a literal");
        literal.name = std::string{ name.text };
        SourceSpan last = name.span;
        if (c.accept("=")) {
            const Token& value = c.peek();
            if (value.kind != TokenKind::name || is_statement_keyword(value.text))
                c.fail(value, "unexpected " + describe(value), "a value name");
            literal.value = std::string{ value.text };
            last = value.span;
            c.take();
        }
        literal.span = join(first, last);
        return literal;
    }

    std::vector<RawLiteral> parse_literal_set(Cursor& c)
    {
        std::vector<RawLiteral> literals;
        c.expect("{");
        if (c.accept("}"))
            return literals;
        do {
            literals.push_back(parse_literal(c));
        } while (c.accept(","));
        c.expect("}");
        return literals;
    }

    std::vector<RawLiteral> parse_condition(Cursor& c)
    {
        if (c.peek().is("{"))
            return parse_literal_set(c);
        std::vector<RawLiteral> literals{ parse_literal(c) };
        while (c.accept("&"))
            literals.push_back(parse_literal(c));
        return literals;
    }

    std::vector<RawOutcome> parse_outcomes(Cursor& c)
    {
        std::vector<RawOutcome> outcomes;
        c.expect("{");
        do {
            RawOutcome outcome;
            const SourceSpan first = c.expect("(").span;
            if (c.peek().is("{"))
                outcome.literals = parse_literal_set(c);
            else
                outcome.literals.push_back(parse_literal(c));
            c.expect(",");
            outcome.probability = c.expect_probability();
            outcome.span = join(first, c.expect(")").span);
            outcomes.push_back(std::move(outcome));
        } while (c.accept(","));
        c.expect("}");
        return outcomes;
    }

    // ---- semantics ------------------------------------------------------

    std::optional<Domain> build()
    {
        std::vector<FluentDecl> fluents;
        std::set<std::string> fluent_names;
        for (const auto& statement : statements_) {
            const auto* stmt = std::get_if<FluentStmt>(&statement.body);
            if (stmt == nullptr)
                continue;
            if (!fluent_names.insert(stmt->name.name).second) {
                error(stmt->name.span, "fluent '" + stmt->name.name + "' declared twice");
                continue;
            }
            FluentDecl decl{ stmt->name.name, {} };
            std::set<std::string> seen;
            for (const auto& value : stmt->values) {
                if (!seen.insert(value.name).second)
                    error(value.span, "value '" + value.name + "' listed twice");
                decl.values.push_back(value.name);
            }
            fluents.push_back(std::move(decl));
        }
        Domain domain{ std::move(fluents) };

        declare_actions(domain);
        if (error_count() > 0)
            return std::nullopt;

        bool have_timeline = false;
        Instant max_instant = 0;
        for (const auto& statement : statements_) {
            if (const auto* stmt = std::get_if<InstantsStmt>(&statement.body)) {
                if (have_timeline)
                    error(statement.span, "timeline declared twice");
                have_timeline = true;
                domain.origin = stmt->from;
                domain.horizon = stmt->to;
            } else if (const auto* o = std::get_if<OPropStmt>(&statement.body); o && o->instant) {
                max_instant = std::max(max_instant, *o->instant);
            } else if (const auto* p = std::get_if<PPropStmt>(&statement.body); p && p->instant) {
                max_instant = std::max(max_instant, *p->instant);
            }
        }
        if (!have_timeline)
            domain.horizon = max_instant;

        bool have_initial = false;
        for (const auto& statement : statements_) {
            std::visit(
                [&](const auto& stmt) {
                    using T = std::decay_t<decltype(stmt)>;
                    if constexpr (std::is_same_v<T, IPropStmt>) {
                        if (have_initial)
                            error(statement.span, "initially-one-of declared twice");
                        have_initial = true;
                        build_initial(domain, stmt);
                    } else if constexpr (std::is_same_v<T, CPropStmt>) {
                        build_cprop(domain, stmt, statement.span);
                    } else if constexpr (std::is_same_v<T, OPropStmt>) {
                        build_oprop(domain, stmt);
                    } else if constexpr (std::is_same_v<T, PPropStmt>) {
                        build_pprop(domain, stmt, statement.span);
                    } else if constexpr (std::is_same_v<T, SPropStmt>) {
                        build_sprop(domain, stmt);
                    }
                },
                statement.body);
        }
        if (!have_initial) {
            const SourceSpan at = tokens_.back().span;
            error(at, "missing initially-one-of");
        }
        if (error_count() > 0)
            return std::nullopt;
        return domain;
    }

    void declare_actions(Domain& domain)
    {
        std::vector<std::string> order;
        std::map<std::string, ActionKind> kinds;
        std::map<std::string, SourceSpan> declared;

        auto use = [&](const NameRef& ref, std::optional<ActionKind> implied) {
            if (domain.find_fluent(ref.name)) {
                error(ref.span, "'" + ref.name + "' is a fluent, not an action");
                return;
            }
            auto [it, inserted] = kinds.try_emplace(ref.name, ActionKind::environment);
            if (inserted)
                order.push_back(ref.name);
            if (implied == ActionKind::agent && !declared.contains(ref.name))
                it->second = ActionKind::agent;
        };

        for (const auto& statement : statements_) {
            if (const auto* stmt = std::get_if<ActionDeclStmt>(&statement.body)) {
                for (const auto& ref : stmt->names) {
                    if (declared.contains(ref.name)) {
                        error(ref.span, "action '" + ref.name + "' declared twice");
                        continue;
                    }
                    use(ref, std::nullopt);
                    declared.emplace(ref.name, ref.span);
                    kinds[ref.name] = stmt->kind;
                }
            }
        }
        // Implicit declarations, in order of first mention.
        for (const auto& statement : statements_) {
            std::visit(
                [&](const auto& stmt) {
                    using T = std::decay_t<decltype(stmt)>;
                    if constexpr (std::is_same_v<T, CPropStmt>) {
                        for (const auto& literal : stmt.condition)
                            if (!domain.find_fluent(literal.name))
                                use(NameRef{ literal.name, literal.span }, std::nullopt);
                    } else if constexpr (std::is_same_v<T, OPropStmt>) {
                        use(stmt.action, ActionKind::environment);
                    } else if constexpr (std::is_same_v<T, PPropStmt> || std::is_same_v<T, SPropStmt>) {
                        use(stmt.action, ActionKind::agent);
                    }
                },
                statement.body);
        }
        for (const auto& name : order) {
            try {
                domain.add_action(name, kinds.at(name));
            } catch (const DomainError& e) {
                error(declared.contains(name) ? declared.at(name) : SourceSpan{}, e.what());
            }
        }
    }

    std::optional<FluentLiteral> resolve_fluent_literal(const Domain& domain, const RawLiteral& literal)
    {
        const auto fluent = domain.find_fluent(literal.name);
        if (!fluent) {
            error(literal.span, "undeclared fluent '" + literal.name + "'");
            return std::nullopt;
        }
        const auto& decl = domain.fluent(*fluent);
        if (literal.value) {
            if (literal.negated) {
                error(literal.span, "a negated literal cannot carry a value");
                return std::nullopt;
            }
            if (auto value = domain.find_value(*fluent, *literal.value))
                return FluentLiteral{ *fluent, *value };
            error(literal.span, "fluent '" + literal.name + "' has no value '" + *literal.value + "'");
            return std::nullopt;
        }
        if (!decl.is_boolean()) {
            error(literal.span, "fluent '" + literal.name + "' is not boolean; write " + literal.name + "=value");
            return std::nullopt;
        }
        return FluentLiteral{ *fluent, *domain.find_value(*fluent, literal.negated ? false_value : true_value) };
    }

    std::optional<ActionLiteral> resolve_action_literal(const Domain& domain, const RawLiteral& literal)
    {
        const auto action = domain.find_action(literal.name);
        if (!action) {
            error(literal.span, "undeclared name '" + literal.name + "'");
            return std::nullopt;
        }
        bool occurred = !literal.negated;
        if (literal.value) {
            if (literal.negated || (*literal.value != true_value && *literal.value != false_value)) {
                error(literal.span, "action literal '" + literal.name + "' takes only true or false");
                return std::nullopt;
            }
            occurred = *literal.value == true_value;
        }
        return ActionLiteral{ *action, occurred };
    }

    std::optional<std::vector<FluentLiteral>> resolve_fluent_set(const Domain& domain,
                                                                 const std::vector<RawLiteral>& raw,
                                                                 const SourceSpan& span, std::string_view what)
    {
        std::vector<FluentLiteral> literals;
        bool ok = true;
        for (const auto& literal : raw) {
            auto resolved = resolve_fluent_literal(domain, literal);
            if (!resolved) {
                ok = false;
                continue;
            }
            if (std::find(literals.begin(), literals.end(), *resolved) == literals.end())
                literals.push_back(*resolved);
        }
        if (!ok)
            return std::nullopt;
        if (!Condition{ literals, {} }.consistent()) {
            error(span, std::string{ what } + " assigns two values to one fluent");
            return std::nullopt;
        }
        return literals;
    }

    void build_initial(Domain& domain, const IPropStmt& stmt)
    {
        for (const auto& outcome : stmt.outcomes) {
            auto literals = resolve_fluent_set(domain, outcome.literals, outcome.span, "initial outcome");
            if (!literals)
                continue;
            std::vector<ValueId> values(domain.fluents().size(), 0);
            std::vector<bool> mentioned(domain.fluents().size(), false);
            for (const auto& literal : *literals) {
                values[literal.fluent] = literal.value;
                mentioned[literal.fluent] = true;
            }
            std::string missing;
            for (FluentId f = 0; f < mentioned.size(); ++f)
                if (!mentioned[f])
                    missing += (missing.empty() ? "" : ", ") + domain.fluent(f).name;
            if (!missing.empty()) {
                error(outcome.span, "initial outcome does not mention " + missing);
                continue;
            }
            domain.initial.outcomes.push_back(InitialOutcome{ State{ std::move(values) }, outcome.probability });
        }
    }

    void build_cprop(Domain& domain, const CPropStmt& stmt, const SourceSpan& span)
    {
        CProp cprop;
        bool ok = true;
        for (const auto& literal : stmt.condition) {
            if (domain.find_fluent(literal.name)) {
                if (auto resolved = resolve_fluent_literal(domain, literal))
                    cprop.condition.fluents.push_back(*resolved);
                else
                    ok = false;
            } else if (auto resolved = resolve_action_literal(domain, literal)) {
                cprop.condition.actions.push_back(*resolved);
            } else {
                ok = false;
            }
        }
        if (ok && !cprop.condition.consistent()) {
            error(span, "condition contradicts itself");
            ok = false;
        }
        for (const auto& outcome : stmt.outcomes) {
            auto effect = resolve_fluent_set(domain, outcome.literals, outcome.span, "effect");
            if (!effect) {
                ok = false;
                continue;
            }
            cprop.outcomes.push_back(Outcome{ std::move(*effect), outcome.probability });
        }
        if (ok)
            domain.cprops.push_back(std::move(cprop));
    }

    void build_oprop(Domain& domain, const OPropStmt& stmt)
    {
        const auto action = domain.find_action(stmt.action.name);
        if (!action)
            return; // reported during declaration
        if (stmt.instant) {
            domain.narrative.push_back(OProp{ *action, *stmt.instant, stmt.probability });
            return;
        }
        for (Instant i = domain.origin; i <= domain.horizon; ++i) {
            domain.narrative.push_back(OProp{ *action, i, stmt.probability });
            if (i == domain.horizon)
                break;
        }
    }

    void build_pprop(Domain& domain, const PPropStmt& stmt, const SourceSpan& span)
    {
        const auto action = domain.find_action(stmt.action.name);
        if (!action)
            return;
        if (stmt.condition) {
            try {
                (void)bind_condition(stmt.condition->formula, domain);
            } catch (const DomainError& e) {
                error(span, e.what());
                return;
            }
        }
        domain.pprops.push_back(PProp{ *action, stmt.instant, stmt.condition });
    }

    void build_sprop(Domain& domain, const SPropStmt& stmt)
    {
        const auto action = domain.find_action(stmt.action.name);
        const auto fluent = domain.find_fluent(stmt.fluent.name);
        if (!action)
            return;
        if (!fluent) {
            error(stmt.fluent.span, "undeclared fluent '" + stmt.fluent.name + "'");
            return;
        }
        if (!domain.fluent(*fluent).is_boolean()) {
            error(stmt.fluent.span, "only boolean fluents can be sensed");
            return;
        }
        domain.sprops.push_back(SProp{ *action, *fluent, stmt.accuracies });
    }

    // ---- diagnostics ----------------------------------------------------

    void error(const SourceSpan& span, std::string message, std::string expected = {})
    {
        diagnostics_.push_back(ParseDiagnostic{ Severity::error, std::move(message), span, std::move(expected) });
    }

    std::size_t error_count() const
    {
        return static_cast<std::size_t>(std::count_if(diagnostics_.begin(), diagnostics_.end(), [](const auto& d) {
            return d.severity == Severity::error;
        }));
    }

    std::vector<Token> tokens_;
    std::vector<Statement> statements_;
    std::vector<ParseDiagnostic> diagnostics_;
};

} // namespace

Parsed<Domain> parse_domain(std::string_view text)
{
    return Parser{ text }.run();
}

} // namespace pec::dsl
