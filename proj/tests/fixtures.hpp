#pragma once

// The running two-source setup shared by the unit and acceptance tests:
// Θ = {A, B, C} with A∩C and C∩(A∪B) declared empty, sources
// {A:0.4, B:0.2, A∪B:0.4} and {A:0.2, C:0.3, A∪B:0.5}, and the expected
// valuations of every rule on it.

#include <map>
#include <string>
#include <vector>

#include "evfuse/bba.hpp"
#include "generators.hpp"

namespace fix {

inline evfuse::Model worked_model(evfuse::Emptiness mode = evfuse::Emptiness::declared) {
    const evfuse::Frame frame = gen::tiny_frame(3);
    return evfuse::Model(
        frame,
        {evfuse::parse_expression("A & C", frame), evfuse::parse_expression("C & (A | B)", frame)},
        mode);
}

inline std::vector<evfuse::MassAssignment> worked_sources(const evfuse::Model& model) {
    const evfuse::Frame& frame = model.frame();
    const auto p = [&](const char* text) { return evfuse::parse_expression(text, frame); };
    return {evfuse::make_bba(model, {{p("A"), 0.4}, {p("B"), 0.2}, {p("A | B"), 0.4}}),
            evfuse::make_bba(model, {{p("A"), 0.2}, {p("C"), 0.3}, {p("A | B"), 0.5}})};
}

using Expected = std::map<std::string, double>;

inline const Expected conjunctive_expected{
    {"A", 0.36}, {"B", 0.10}, {"A | B", 0.20}, {"A & B", 0.04}, {"B & C", 0.06}};

inline const Expected urr_expected{{"A", 0.42},     {"B", 0.16},     {"C", 0.06},
                                   {"A | B", 0.26}, {"A & B", 0.04}, {"B & C", 0.06}};

inline const Expected murr_expected{
    {"A", 0.408}, {"B", 0.148}, {"A | B", 0.248}, {"A & B", 0.088}, {"B & C", 0.108}};

inline const Expected purr_expected{{"A", 0.42},     {"B", 0.10},     {"C", 0.12},
                                    {"A | B", 0.26}, {"A & B", 0.04}, {"B & C", 0.06}};

inline const Expected dempster_expected{{"A", 0.473684},
                                        {"B", 0.131579},
                                        {"A | B", 0.263158},
                                        {"A & B", 0.052632},
                                        {"B & C", 0.078947}};

inline const Expected pcr5_expected{{"A", 0.428571},     {"B", 0.10},        {"C", 0.102857},
                                    {"A | B", 0.268571}, {"A & B", 0.04},    {"B & C", 0.06}};

inline const char* worked_scenario_json = R"json({
  "frame": ["A", "B", "C"],
  "constraints": ["A & C", "C & (A | B)"],
  "emptiness": "declared",
  "sources": [
    { "A": 0.4, "B": 0.2, "A | B": 0.4 },
    { "A": 0.2, "C": 0.3, "A | B": 0.5 }
  ]
})json";

}  // namespace fix
