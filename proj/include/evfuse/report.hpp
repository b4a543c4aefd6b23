#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evfuse/scenario.hpp"

namespace evfuse {

enum class Rule { conjunctive, urr, murr, purr, dempster, pcr5 };

std::string_view rule_name(Rule rule);

/// Accepts the names conjunctive|urr|murr|purr|dempster|pcr5.
Rule rule_from_name(std::string_view name);

/// Parse a comma-separated rule list; rejects empty lists and unknown names.
std::vector<Rule> parse_rule_list(std::string_view csv);

/// One executed rule: its output masses and the wall time of the full
/// combination call (its own conjunctive pass included).
struct RuleColumn {
    Rule rule;
    MassMap masses;
    double micros;
};

/// Side-by-side rule outputs over one scenario, plus the shared conflict
/// figures: total conflict k, source-focal-union count n, core count n_core.
struct ComparisonReport {
    std::vector<RuleColumn> columns;
    double total_conflict;
    std::size_t focal_union_count;
    std::size_t core_count;
    Emptiness mode;
};

/// Run each requested rule on the scenario. Rule-domain errors (degenerate
/// murr core, total-conflict dempster) propagate verbatim; pcr5 demands
/// exactly two sources.
ComparisonReport build_report(const Scenario& scenario, const std::vector<Rule>& rules);

/// Fixed-width table, masses at 6 decimals, rows in canonical order.
std::string render_table(const ComparisonReport& report);

/// Machine-readable form; full-precision numbers. Everything except the
/// "timings_us" object is deterministic for identical scenarios and flags.
nlohmann::json render_json(const ComparisonReport& report);

}  // namespace evfuse
