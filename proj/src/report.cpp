#include "evfuse/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>

namespace evfuse {

std::string_view rule_name(Rule rule) {
    switch (rule) {
        case Rule::conjunctive: return "conjunctive";
        case Rule::urr: return "urr";
        case Rule::murr: return "murr";
        case Rule::purr: return "purr";
        case Rule::dempster: return "dempster";
        case Rule::pcr5: return "pcr5";
    }
    return "?";
}

Rule rule_from_name(std::string_view name) {
    for (Rule r : {Rule::conjunctive, Rule::urr, Rule::murr, Rule::purr, Rule::dempster,
                   Rule::pcr5})
        if (name == rule_name(r)) return r;
    throw ValidationError("unknown rule '" + std::string(name) +
                          "' (expected conjunctive|urr|murr|purr|dempster|pcr5)");
}

std::vector<Rule> parse_rule_list(std::string_view csv) {
    std::vector<Rule> rules;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string_view::npos) comma = csv.size();
        std::string_view item = csv.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) rules.push_back(rule_from_name(item));
        start = comma + 1;
    }
    if (rules.empty()) throw ValidationError("at least one rule is required");
    return rules;
}

namespace {

template <typename F>
std::pair<MassMap, double> timed_masses(F&& run) {
    const auto t0 = std::chrono::steady_clock::now();
    MassMap masses = run();
    const auto t1 = std::chrono::steady_clock::now();
    return {std::move(masses), std::chrono::duration<double, std::micro>(t1 - t0).count()};
}

MassMap run_rule(Rule rule, const Scenario& scenario) {
    const std::span<const MassAssignment> sources(scenario.sources);
    switch (rule) {
        case Rule::conjunctive: return conjunctive(sources, scenario.model).masses;
        case Rule::urr: return urr(sources, scenario.model).entries();
        case Rule::murr: return murr(sources, scenario.model).entries();
        case Rule::purr: return purr(sources, scenario.model).entries();
        case Rule::dempster: return dempster(sources, scenario.model).entries();
        case Rule::pcr5:
            if (sources.size() != 2)
                throw ValidationError("pcr5 requires exactly two sources, got " +
                                      std::to_string(sources.size()));
            return pcr5(sources[0], sources[1], scenario.model).entries();
    }
    throw ValidationError("unknown rule");
}

std::string format_mass(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

}  // namespace

ComparisonReport build_report(const Scenario& scenario, const std::vector<Rule>& rules) {
    if (rules.empty()) throw ValidationError("at least one rule is required");
    ComparisonReport report;
    report.mode = scenario.model.mode();

    const ConjunctiveResult shared = conjunctive(scenario.sources, scenario.model);
    const RedistributionSupports supports = redistribution_supports(shared);
    report.total_conflict = shared.total_conflict;
    report.focal_union_count = supports.urr_count;
    report.core_count = supports.murr_count;

    for (Rule rule : rules) {
        auto [masses, micros] = timed_masses([&] { return run_rule(rule, scenario); });
        report.columns.push_back({rule, std::move(masses), micros});
    }
    return report;
}

std::string render_table(const ComparisonReport& report) {
    std::set<Proposition> rows;
    for (const auto& column : report.columns)
        for (const auto& [p, m] : column.masses) rows.insert(p);

    std::size_t width = 11;  // "proposition"
    for (const auto& p : rows) width = std::max(width, p.str().size());

    std::string out;
    out += "proposition";
    out.append(width - 11 + 2, ' ');
    for (const auto& column : report.columns) {
        std::string name(rule_name(column.rule));
        out += name;
        out.append(name.size() < 12 ? 12 - name.size() : 2, ' ');
    }
    out += '\n';

    for (const auto& p : rows) {
        const std::string label = p.str();
        out += label;
        out.append(width - label.size() + 2, ' ');
        for (const auto& column : report.columns) {
            auto it = column.masses.find(p);
            const std::string cell = it == column.masses.end() ? "-" : format_mass(it->second);
            out += cell;
            out.append(cell.size() < 12 ? 12 - cell.size() : 2, ' ');
        }
        out += '\n';
    }

    out += "\nk = " + format_mass(report.total_conflict) +
           "   n = " + std::to_string(report.focal_union_count) +
           "   n_core = " + std::to_string(report.core_count) +
           "   emptiness = " + emptiness_name(report.mode) + "\n";
    out += "time[us]:";
    for (const auto& column : report.columns) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), " %s=%.1f", std::string(rule_name(column.rule)).c_str(),
                      column.micros);
        out += buf;
    }
    out += '\n';
    return out;
}

nlohmann::json render_json(const ComparisonReport& report) {
    nlohmann::json doc;
    doc["k"] = report.total_conflict;
    doc["n"] = report.focal_union_count;
    doc["n_core"] = report.core_count;
    doc["emptiness"] = emptiness_name(report.mode);
    nlohmann::json rules = nlohmann::json::array();
    nlohmann::json masses = nlohmann::json::object();
    nlohmann::json timings = nlohmann::json::object();
    for (const auto& column : report.columns) {
        const std::string name(rule_name(column.rule));
        rules.push_back(name);
        masses[name] = masses_to_json(column.masses);
        timings[name] = column.micros;
    }
    doc["rules"] = rules;
    doc["masses"] = masses;
    doc["timings_us"] = timings;
    return doc;
}

}  // namespace evfuse
