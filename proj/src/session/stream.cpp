#include "pec/error.hpp"
#include "pec/session.hpp"

#include "dsl/flat_json.hpp"

#include <charconv>
#include <istream>

namespace pec::session
{

namespace
{

using dsl::detail::JsonScalar;

bool is_blank_or_comment(const std::string& line)
{
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '%';
}

ObservationRecord parse_observation(const dsl::detail::FlatObject& object, std::size_t number)
{
    const auto& members = object.members;
    ObservationRecord record;

    const auto instant = members.find("instant");
    if (instant == members.end() || instant->second.kind != JsonScalar::Kind::unsigned_integer)
        throw StreamError(number, "observation needs a non-negative integer \"instant\"");
    const auto& digits = instant->second.text;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), record.instant);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw StreamError(number, "instant " + digits + " is out of range");

    const auto sense = members.find("sense");
    if (sense == members.end() || sense->second.kind != JsonScalar::Kind::string || sense->second.text.empty())
        throw StreamError(number, "observation needs a string \"sense\"");
    record.sense = sense->second.text;

    const auto result = members.find("result");
    if (result == members.end() || result->second.kind != JsonScalar::Kind::string)
        throw StreamError(number, "observation needs a string \"result\"");
    if (result->second.text == "positive")
        record.result = SenseResult::positive;
    else if (result->second.text == "negative")
        record.result = SenseResult::negative;
    else
        throw StreamError(number, "result must be \"positive\" or \"negative\", not \"" + result->second.text + "\"");
    return record;
}

} // namespace

TickReader::TickReader(std::istream& in, Instant origin, Instant horizon)
    : in_{ in }, next_instant_{ origin }, horizon_{ horizon }
{
}

std::optional<TickReader::Line> TickReader::read_line()
{
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        if (is_blank_or_comment(text))
            continue;

        Line line{ line_, 0, std::nullopt, std::nullopt };
        const auto first = text.find_first_not_of(" \t\r");
        bool is_observation = false;
        if (text[first] == '{') {
            const auto object = dsl::detail::parse_flat_object(text);
            if (object.error.empty() && object.members.contains("sense")) {
                line.observation = parse_observation(object, line_);
                line.instant = line.observation->instant;
                is_observation = true;
            }
        }
        if (!is_observation) {
            auto parsed = dsl::parse_event_line(text);
            if (!parsed.ok()) {
                const auto& d = parsed.diagnostics.front();
                throw StreamError(line_, d.message + (d.expected.empty() ? "" : " (expected " + d.expected + ")"));
            }
            line.instant = parsed.value->instant;
            line.event = std::move(*parsed.value);
        }

        if (seen_any_ && line.instant < last_seen_)
            throw StreamError(line_, "instant " + std::to_string(line.instant) + " after instant " +
                                         std::to_string(last_seen_) + "; events must be in instant order");
        if (line.instant > horizon_)
            throw StreamError(line_, "instant " + std::to_string(line.instant) + " is beyond the horizon " +
                                         std::to_string(horizon_));
        if (line.event && !seen_events_.emplace(line.event->action, line.instant).second)
            throw StreamError(line_, "duplicate event " + line.event->action + " at instant " +
                                         std::to_string(line.instant));
        seen_any_ = true;
        last_seen_ = line.instant;
        return line;
    }
    return std::nullopt;
}

std::optional<TickBatch> TickReader::next()
{
    if (done_)
        return std::nullopt;
    if (!pending_)
        pending_ = read_line();
    if (pending_ && pending_->instant < next_instant_)
        throw StreamError(pending_->number, "instant " + std::to_string(pending_->instant) + " precedes the origin");

    TickBatch batch;
    batch.instant = next_instant_;
    while (pending_ && pending_->instant == next_instant_) {
        if (pending_->event)
            batch.events.push_back(std::move(*pending_->event));
        else
            batch.observations.push_back(std::move(*pending_->observation));
        pending_ = read_line();
    }
    if (next_instant_ == horizon_)
        done_ = true;
    else
        ++next_instant_;
    return batch;
}

std::vector<TickBatch> ingest_stream(std::istream& in, Instant origin, Instant horizon)
{
    TickReader reader{ in, origin, horizon };
    std::vector<TickBatch> batches;
    while (auto batch = reader.next())
        batches.push_back(std::move(*batch));
    return batches;
}

} // namespace pec::session
