#include "pec/session.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace pec::session
{

namespace
{

std::string shortest(double value)
{
    std::array<char, 32> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    (void)ec;
    return std::string(buffer.data(), end);
}

/// Exact decimal when short, otherwise six significant digits.
std::string readable(const Probability& value)
{
    if (auto exact = value.exact_decimal(6))
        return *exact;
    std::array<char, 32> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.6g", value.to_double());
    return buffer.data();
}

std::string percentage(std::size_t part, std::size_t whole)
{
    std::array<char, 32> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.1f%%", whole == 0 ? 0.0 : 100.0 * double(part) / double(whole));
    return buffer.data();
}

std::string trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos)
        return {};
    const auto last = text.find_last_not_of(" \t");
    return std::string{ text.substr(first, last - first + 1) };
}

} // namespace

std::optional<Thresholds> parse_thresholds(std::string_view text, const std::vector<TrackedLiteral>& tracked)
{
    Thresholds thresholds;
    const std::string whole = trim(text);
    if (whole.empty())
        return thresholds;
    if (auto value = Rational::parse(whole); value && value->is_probability()) {
        for (const auto& literal : tracked)
            thresholds[literal.name] = *value;
        return thresholds;
    }
    std::size_t start = 0;
    while (start <= whole.size()) {
        const auto comma = whole.find(',', start);
        const std::string item =
            trim(std::string_view{ whole }.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        const auto equals = item.rfind('=');
        if (equals == std::string::npos)
            return std::nullopt;
        const std::string name = trim(std::string_view{ item }.substr(0, equals));
        const auto value = Rational::parse(trim(std::string_view{ item }.substr(equals + 1)));
        if (!value || !value->is_probability())
            return std::nullopt;
        bool known = false;
        for (const auto& literal : tracked)
            known = known || literal.name == name;
        if (!known)
            return std::nullopt;
        thresholds[name] = *value;
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return thresholds;
}

Report generate_report(const SessionLog& log, const Thresholds& thresholds)
{
    Report report;
    const auto tracked = tracked_literals(log.fluents);
    const auto beliefs = log.beliefs();
    for (const auto& literal : tracked) {
        Series series{ literal.name, {} };
        for (const auto& belief : beliefs)
            series.values.push_back(belief.marginal(literal.literal));
        report.series.push_back(std::move(series));
    }
    for (const auto& belief : beliefs)
        report.instants.push_back(belief.instant);
    report.decisions = log.decisions();

    for (const auto& series : report.series) {
        if (const auto it = thresholds.find(series.name); it != thresholds.end()) {
            ThresholdCount count{ series.name, it->second, 0, series.values.size() };
            for (const auto& value : series.values)
                count.above += value > it->second ? 1 : 0;
            report.counts.push_back(std::move(count));
        }
        if (series.values.empty())
            continue;
        std::size_t best = 0;
        for (std::size_t k = 1; k < series.values.size(); ++k)
            if (series.values[k] < series.values[best])
                best = k;
        report.minima.push_back(Minimum{ series.name, report.instants[best], series.values[best] });
    }

    std::ostringstream text;
    if (report.instants.empty())
        text << "Session report: no instants\n";
    else
        text << "Session report: instants " << report.instants.front() << ".." << report.instants.back() << " ("
             << report.instants.size() << " instants)\n";
    if (!thresholds.empty()) {
        text << "Thresholds:";
        bool first = true;
        for (const auto& [name, value] : thresholds) {
            text << (first ? " " : ", ") << name << " " << readable(value);
            first = false;
        }
        text << '\n';
    }
    for (const auto& count : report.counts)
        text << count.name << " above threshold " << count.above << '/' << count.total << " instants ("
             << percentage(count.above, count.total) << ")\n";
    for (const auto& minimum : report.minima)
        text << minimum.name << " lowest at instant " << minimum.instant << " (" << readable(minimum.value) << ")\n";
    text << "Decisions: " << report.decisions.size() << '\n';
    for (const auto& decision : report.decisions) {
        text << "  instant " << decision.instant << ": " << decision.action;
        if (!decision.condition.empty())
            text << " because " << decision.condition;
        if (decision.belief)
            text << " (belief " << readable(*decision.belief) << ")";
        if (decision.suppressed)
            text << " [suppressed by cooldown]";
        text << '\n';
    }
    report.text = text.str();

    std::ostringstream csv;
    csv << "instant";
    for (const auto& series : report.series)
        csv << ',' << series.name;
    csv << '\n';
    for (std::size_t k = 0; k < report.instants.size(); ++k) {
        csv << report.instants[k];
        for (const auto& series : report.series)
            csv << ',' << shortest(series.values[k].to_double());
        csv << '\n';
    }
    report.csv = csv.str();
    return report;
}

} // namespace pec::session
