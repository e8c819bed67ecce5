#include "pec/error.hpp"
#include "pec/runtime.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace pec
{

namespace
{

using Json = nlohmann::ordered_json;

void put_rational(Json& object, const std::string& key, const Rational& value)
{
    object[key] = value.fraction();
    object[key + "_decimal"] = value.to_double();
}

Json header_json(const SessionLog& log)
{
    Json header;
    header["type"] = "header";
    header["fingerprint"] = log.fingerprint;
    header["cooldown"] = log.config.cooldown;
    header["origin"] = log.origin;
    header["horizon"] = log.config.horizon ? Json(*log.config.horizon) : Json(nullptr);
    Json fluents = Json::array();
    for (const auto& fluent : log.fluents)
        fluents.push_back(Json{ { "name", fluent.name }, { "values", fluent.values } });
    header["fluents"] = std::move(fluents);
    return header;
}

struct RecordWriter
{
    const SessionLog& log;
    const std::vector<TrackedLiteral>& tracked;

    Json operator()(const BeliefRecord& record) const
    {
        Json out;
        out["type"] = "belief";
        out["instant"] = record.belief.instant;
        Json support = Json::array();
        for (const auto& [state, probability] : record.belief.support) {
            Json entry;
            Json assignment = Json::object();
            for (FluentId f = 0; f < log.fluents.size(); ++f)
                assignment[log.fluents[f].name] = log.fluents[f].values[state[f]];
            entry["state"] = std::move(assignment);
            put_rational(entry, "p", probability);
            support.push_back(std::move(entry));
        }
        out["support"] = std::move(support);
        Json marginals = Json::object();
        for (const auto& literal : tracked)
            marginals[literal.name] = record.belief.marginal(literal.literal).to_double();
        out["marginals"] = std::move(marginals);
        return out;
    }

    Json operator()(const DecisionEntry& record) const
    {
        Json out;
        out["type"] = "decision";
        out["instant"] = record.instant;
        out["action"] = record.action;
        out["pprop"] = record.pprop;
        out["condition"] = record.condition;
        if (record.belief)
            put_rational(out, "belief", *record.belief);
        else
            out["belief"] = nullptr;
        out["suppressed"] = record.suppressed;
        return out;
    }

    Json operator()(const EventEntry& record) const
    {
        Json out;
        out["type"] = "event";
        out["instant"] = record.instant;
        out["action"] = record.action;
        put_rational(out, "p", record.probability);
        return out;
    }

    Json operator()(const ObservationEntry& record) const
    {
        Json out;
        out["type"] = "observation";
        out["instant"] = record.observation.instant;
        out["sense"] = record.observation.sense;
        out["result"] = to_string(record.observation.result);
        out["action"] = record.action;
        put_rational(out, "p", record.probability);
        out["applied"] = record.applied;
        return out;
    }
};

Json summary_json(const SessionSummary& summary)
{
    Json out;
    out["type"] = "summary";
    out["instants"] = summary.instants;
    out["events"] = summary.events;
    out["observations"] = summary.observations;
    out["decisions"] = summary.decisions;
    out["suppressed"] = summary.suppressed;
    return out;
}

class LineReader
{
public:
    LineReader(const Json& object, std::size_t line) : object_{ object }, line_{ line } {}

    [[noreturn]] void fail(const std::string& message) const { throw StreamError(line_, message); }

    const Json& member(const char* key) const
    {
        const auto it = object_.find(key);
        if (it == object_.end())
            fail(std::string{ "missing field '" } + key + "'");
        return *it;
    }

    std::string string(const char* key) const
    {
        const Json& value = member(key);
        if (!value.is_string())
            fail(std::string{ "field '" } + key + "' must be a string");
        return value.get<std::string>();
    }

    std::uint64_t unsigned_number(const char* key) const
    {
        const Json& value = member(key);
        if (!value.is_number_unsigned())
            fail(std::string{ "field '" } + key + "' must be a non-negative integer");
        return value.get<std::uint64_t>();
    }

    Instant instant(const char* key) const
    {
        const auto value = unsigned_number(key);
        if (value > std::numeric_limits<Instant>::max())
            fail(std::string{ "field '" } + key + "' is out of range");
        return static_cast<Instant>(value);
    }

    bool boolean(const char* key) const
    {
        const Json& value = member(key);
        if (!value.is_boolean())
            fail(std::string{ "field '" } + key + "' must be a boolean");
        return value.get<bool>();
    }

    Rational rational(const char* key) const
    {
        const std::string text = string(key);
        const auto value = Rational::parse(text);
        if (!value)
            fail("malformed rational '" + text + "'");
        return *value;
    }

private:
    const Json& object_;
    std::size_t line_;
};

SenseResult parse_result(const LineReader& reader, const std::string& text)
{
    if (text == "positive")
        return SenseResult::positive;
    if (text == "negative")
        return SenseResult::negative;
    reader.fail("unknown sensing result '" + text + "'");
}

} // namespace

void write_jsonl(const SessionLog& log, std::ostream& out)
{
    const auto tracked = tracked_literals(log.fluents);
    out << header_json(log).dump() << '\n';
    const RecordWriter writer{ log, tracked };
    for (const auto& record : log.records)
        out << std::visit(writer, record).dump() << '\n';
    out << summary_json(log.summary).dump() << '\n';
}

std::string to_jsonl(const SessionLog& log)
{
    std::ostringstream out;
    write_jsonl(log, out);
    return out.str();
}

SessionLog read_jsonl(std::istream& in)
{
    SessionLog log;
    bool have_header = false;
    bool have_summary = false;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        Json object;
        try {
            object = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw StreamError(line, std::string{ "malformed JSON: " } + e.what());
        }
        if (!object.is_object())
            throw StreamError(line, "expected a JSON object");
        const LineReader reader{ object, line };
        const std::string type = reader.string("type");
        if (have_summary)
            reader.fail("record after the summary");

        if (type == "header") {
            if (have_header)
                reader.fail("second header");
            have_header = true;
            log.fingerprint = reader.string("fingerprint");
            log.config.cooldown = reader.instant("cooldown");
            log.origin = reader.instant("origin");
            if (!reader.member("horizon").is_null())
                log.config.horizon = reader.instant("horizon");
            const Json& fluents = reader.member("fluents");
            if (!fluents.is_array())
                reader.fail("field 'fluents' must be an array");
            for (const auto& entry : fluents) {
                if (!entry.is_object())
                    reader.fail("fluent entries must be objects");
                const LineReader fluent{ entry, line };
                FluentDecl decl{ fluent.string("name"), {} };
                const Json& values = fluent.member("values");
                if (!values.is_array())
                    reader.fail("fluent values must be an array");
                for (const auto& value : values) {
                    if (!value.is_string())
                        reader.fail("fluent values must be strings");
                    decl.values.push_back(value.get<std::string>());
                }
                log.fluents.push_back(std::move(decl));
            }
            continue;
        }
        if (!have_header)
            reader.fail("record before the header");

        if (type == "belief") {
            BeliefState belief;
            belief.instant = reader.instant("instant");
            const Json& support = reader.member("support");
            if (!support.is_array())
                reader.fail("field 'support' must be an array");
            for (const auto& entry : support) {
                if (!entry.is_object())
                    reader.fail("support entries must be objects");
                const LineReader item{ entry, line };
                const Json& assignment = item.member("state");
                if (!assignment.is_object() || assignment.size() != log.fluents.size())
                    reader.fail("state must assign every fluent");
                std::vector<ValueId> values;
                for (const auto& fluent : log.fluents) {
                    const auto it = assignment.find(fluent.name);
                    if (it == assignment.end() || !it->is_string())
                        reader.fail("state does not assign " + fluent.name);
                    const auto value = std::find(fluent.values.begin(), fluent.values.end(), it->get<std::string>());
                    if (value == fluent.values.end())
                        reader.fail("unknown value '" + it->get<std::string>() + "' for " + fluent.name);
                    values.push_back(static_cast<ValueId>(value - fluent.values.begin()));
                }
                belief.support.emplace_back(State{ std::move(values) }, item.rational("p"));
            }
            log.records.emplace_back(BeliefRecord{ std::move(belief) });
        } else if (type == "decision") {
            DecisionEntry entry;
            entry.instant = reader.instant("instant");
            entry.action = reader.string("action");
            entry.pprop = reader.unsigned_number("pprop");
            entry.condition = reader.string("condition");
            if (!reader.member("belief").is_null())
                entry.belief = reader.rational("belief");
            entry.suppressed = reader.boolean("suppressed");
            log.records.emplace_back(std::move(entry));
        } else if (type == "event") {
            log.records.emplace_back(
                EventEntry{ reader.instant("instant"), reader.string("action"), reader.rational("p") });
        } else if (type == "observation") {
            ObservationEntry entry;
            entry.observation.instant = reader.instant("instant");
            entry.observation.sense = reader.string("sense");
            entry.observation.result = parse_result(reader, reader.string("result"));
            entry.action = reader.string("action");
            entry.probability = reader.rational("p");
            entry.applied = reader.boolean("applied");
            log.records.emplace_back(std::move(entry));
        } else if (type == "summary") {
            have_summary = true;
            log.summary.instants = reader.unsigned_number("instants");
            log.summary.events = reader.unsigned_number("events");
            log.summary.observations = reader.unsigned_number("observations");
            log.summary.decisions = reader.unsigned_number("decisions");
            log.summary.suppressed = reader.unsigned_number("suppressed");
        } else {
            reader.fail("unknown record type '" + type + "'");
        }
    }
    if (!have_header)
        throw StreamError(line, "log has no header");
    if (!have_summary)
        throw StreamError(line, "log has no summary");
    return log;
}

} // namespace pec
