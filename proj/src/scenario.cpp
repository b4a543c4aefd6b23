#include "evfuse/scenario.hpp"

#include <fstream>
#include <sstream>

namespace evfuse {

using nlohmann::json;

namespace {

Emptiness emptiness_from_name(const std::string& name) {
    if (name == "declared") return Emptiness::declared;
    if (name == "propagated") return Emptiness::propagated;
    throw ValidationError("emptiness must be \"declared\" or \"propagated\", got \"" + name + "\"");
}

[[noreturn]] void rethrow_with_context(const std::string& context, const Error& e) {
    const std::string message = context + ": " + e.what();
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) throw ParseError(message, pe->position());
    throw ValidationError(message);
}

}  // namespace

const char* emptiness_name(Emptiness mode) {
    return mode == Emptiness::declared ? "declared" : "propagated";
}

Scenario parse_scenario(const std::string& text, std::optional<Emptiness> mode_override) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);  // message already carries line/column
    }
    if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (key != "frame" && key != "constraints" && key != "emptiness" && key != "sources")
            throw ValidationError("unknown scenario key \"" + key + "\"");

    if (!doc.contains("frame") || !doc["frame"].is_array() || doc["frame"].empty())
        throw ValidationError("\"frame\" must be a non-empty array of atom labels");
    std::vector<std::string> labels;
    for (const auto& item : doc["frame"]) {
        if (!item.is_string()) throw ValidationError("\"frame\" entries must be strings");
        labels.push_back(item.get<std::string>());
    }
    const Frame frame(std::move(labels));

    Emptiness mode = Emptiness::declared;
    if (doc.contains("emptiness")) {
        if (!doc["emptiness"].is_string())
            throw ValidationError("\"emptiness\" must be a string");
        mode = emptiness_from_name(doc["emptiness"].get<std::string>());
    }
    if (mode_override) mode = *mode_override;

    std::vector<Proposition> constraints;
    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array())
            throw ValidationError("\"constraints\" must be an array of expressions");
        std::size_t i = 0;
        for (const auto& item : doc["constraints"]) {
            if (!item.is_string()) throw ValidationError("\"constraints\" entries must be strings");
            try {
                constraints.push_back(parse_expression(item.get<std::string>(), frame));
            } catch (const Error& e) {
                rethrow_with_context("constraints[" + std::to_string(i) + "]", e);
            }
            ++i;
        }
    }
    Model model(frame, std::move(constraints), mode);

    if (!doc.contains("sources") || !doc["sources"].is_array() || doc["sources"].empty())
        throw ValidationError("\"sources\" must be a non-empty array of mass objects");
    std::vector<MassAssignment> sources;
    std::size_t i = 0;
    for (const auto& item : doc["sources"]) {
        if (!item.is_object())
            throw ValidationError("sources[" + std::to_string(i) + "] must be an object");
        std::vector<std::pair<Proposition, double>> entries;
        try {
            for (const auto& [expr, mass] : item.items()) {
                if (!mass.is_number())
                    throw ValidationError("mass for \"" + expr + "\" must be a number");
                entries.emplace_back(parse_expression(expr, frame), mass.get<double>());
            }
            sources.push_back(make_bba(model, entries));
        } catch (const Error& e) {
            rethrow_with_context("sources[" + std::to_string(i) + "]", e);
        }
        ++i;
    }

    return Scenario{frame, std::move(model), std::move(sources)};
}

Scenario load_scenario(const std::string& path, std::optional<Emptiness> mode_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_scenario(buffer.str(), mode_override);
    } catch (const Error& e) {
        rethrow_with_context(path, e);
    }
}

json masses_to_json(const MassMap& masses) {
    json out = json::object();
    for (const auto& [p, m] : masses) out[p.str()] = m;
    return out;
}

json to_json(const MassAssignment& assignment) {
    return masses_to_json(assignment.entries());
}

}  // namespace evfuse
