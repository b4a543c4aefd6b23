#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evfuse/fusion.hpp"

namespace evfuse {

/// A self-contained fusion setup: frame, integrity constraints, emptiness
/// mode, and the source bbas, as read from a scenario file.
struct Scenario {
    Frame frame;
    Model model;
    std::vector<MassAssignment> sources;
};

/// Parse a scenario document:
///   { "frame": ["A","B","C"],
///     "constraints": ["A & C", "C & (A | B)"],   // optional, default []
///     "emptiness": "declared" | "propagated",    // optional, default "declared"
///     "sources": [ {"A": 0.4, "B": 0.2, "A | B": 0.4}, ... ] }
/// `mode_override`, when set, replaces the document's emptiness mode before
/// the sources are validated.
Scenario parse_scenario(const std::string& text, std::optional<Emptiness> mode_override = {});

/// Read and parse a scenario file. Errors carry the path; parse errors
/// carry line/column positions.
Scenario load_scenario(const std::string& path, std::optional<Emptiness> mode_override = {});

/// {"<canonical proposition>": mass, ...} with full-precision numbers.
nlohmann::json masses_to_json(const MassMap& masses);
nlohmann::json to_json(const MassAssignment& assignment);

const char* emptiness_name(Emptiness mode);

}  // namespace evfuse
