#include <json.hpp>

#include "homfly/errors.hpp"
#include "homfly/link.hpp"

namespace homfly {

namespace {

const char* slot_name(Slot s) {
    switch (s) {
        case Slot::UnderIn: return "under_in";
        case Slot::UnderOut: return "under_out";
        case Slot::OverIn: return "over_in";
        case Slot::OverOut: return "over_out";
    }
    return "?";
}

Slot slot_from_name(const std::string& name) {
    if (name == "under_in") return Slot::UnderIn;
    if (name == "under_out") return Slot::UnderOut;
    if (name == "over_in") return Slot::OverIn;
    if (name == "over_out") return Slot::OverOut;
    throw ParseError("unknown slot name \"" + name + "\"");
}

nlohmann::ordered_json endpoint_json(const EndPoint& ep) {
    return nlohmann::ordered_json::array({ep.crossing, slot_name(ep.slot)});
}

EndPoint endpoint_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
        !j[1].is_string())
        throw ParseError("arc endpoint must be [crossing, slot]");
    return {j[0].get<CrossingId>(), slot_from_name(j[1].get<std::string>())};
}

}  // namespace

std::string diagram_to_json(const LinkDiagram& d) {
    nlohmann::ordered_json j;
    j["crossings"] = nlohmann::ordered_json::array();
    for (CrossingId c = 0; c < d.crossing_count(); ++c) {
        j["crossings"].push_back(
            {{"id", c}, {"sign", d.sign(c) == Sign::Positive ? "+" : "-"}});
    }
    j["arcs"] = nlohmann::ordered_json::array();
    for (ArcId a = 0; a < d.arc_count(); ++a) {
        j["arcs"].push_back({{"id", a},
                             {"from", endpoint_json(d.arc(a).from)},
                             {"to", endpoint_json(d.arc(a).to)}});
    }
    j["zero_components_removed"] = d.zero_components_removed();
    return j.dump(2) + "\n";
}

LinkDiagram diagram_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad diagram JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("crossings") || !j.contains("arcs") ||
        !j["crossings"].is_array() || !j["arcs"].is_array())
        throw ParseError("diagram JSON must carry \"crossings\" and \"arcs\" arrays");

    std::vector<Sign> signs(j["crossings"].size(), Sign::Positive);
    std::vector<bool> seen_c(signs.size(), false);
    for (const auto& c : j["crossings"]) {
        if (!c.is_object() || !c.contains("id") || !c.contains("sign") ||
            !c["id"].is_number_unsigned() || !c["sign"].is_string())
            throw ParseError("crossing entries must be {id, sign}");
        std::size_t id = c["id"].get<std::size_t>();
        std::string sign = c["sign"].get<std::string>();
        if (id >= signs.size() || seen_c[id])
            throw ParseError("crossing ids must be dense and unique");
        seen_c[id] = true;
        if (sign == "+")
            signs[id] = Sign::Positive;
        else if (sign == "-")
            signs[id] = Sign::Negative;
        else
            throw ParseError("crossing sign must be \"+\" or \"-\"");
    }

    std::vector<Arc> arcs(j["arcs"].size());
    std::vector<bool> seen_a(arcs.size(), false);
    for (const auto& a : j["arcs"]) {
        if (!a.is_object() || !a.contains("id") || !a.contains("from") ||
            !a.contains("to") || !a["id"].is_number_unsigned())
            throw ParseError("arc entries must be {id, from, to}");
        std::size_t id = a["id"].get<std::size_t>();
        if (id >= arcs.size() || seen_a[id])
            throw ParseError("arc ids must be dense and unique");
        seen_a[id] = true;
        arcs[id] = Arc{endpoint_from_json(a["from"]), endpoint_from_json(a["to"])};
    }

    int zero_removed = 0;
    if (j.contains("zero_components_removed")) {
        if (!j["zero_components_removed"].is_number_integer())
            throw ParseError("zero_components_removed must be an integer");
        zero_removed = j["zero_components_removed"].get<int>();
    }

    try {
        return LinkDiagram::from_parts(std::move(signs), std::move(arcs), zero_removed);
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid diagram: ") + e.what());
    }
}

}  // namespace homfly
