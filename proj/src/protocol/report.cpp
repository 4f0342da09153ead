#include <cmath>

#include <nlohmann/json.hpp>

#include "rio/protocol.hpp"

namespace rio::protocol {

using nlohmann::ordered_json;

namespace {

ordered_json phases_json(const std::vector<Complex>& phases) {
    ordered_json out = ordered_json::array();
    for (const auto& t : phases) out.push_back({t.real(), t.imag()});
    return out;
}

const char* party_name(Party p) {
    switch (p) {
        case Party::Alice: return "Alice";
        case Party::Bob: return "Bob";
        case Party::Charlie: return "Charlie";
    }
    return "?";
}

}  // namespace

ordered_json to_json(const Message& m) {
    return {{"from", party_name(m.from)}, {"to", party_name(m.to)}, {"tag", m.tag}, {"bits", m.bits}};
}

ordered_json to_json(const ProtocolResult& r) {
    ordered_json outcomes = ordered_json::object();
    for (char k : {'a', 'b', 'c'}) {
        auto it = r.outcomes.find(k);
        outcomes[std::string(1, k)] = it == r.outcomes.end() ? std::vector<int>{} : it->second;
    }
    ordered_json messages = ordered_json::array();
    for (const auto& m : r.transcript.messages()) messages.push_back(to_json(m));
    ordered_json out{{"family", to_string(r.family)},
                     {"N", r.N},
                     {"n", r.n},
                     {"variant", r.variant},
                     {"x", r.x}};
    out["y"] = r.y == 0 ? ordered_json(nullptr) : ordered_json(r.y);
    out["outcomes"] = outcomes;
    out["branch_probability"] = r.branch_probability;
    out["fidelity"] = r.fidelity;
    out["messages"] = messages;
    out["substitutions"] = r.substitutions;
    return out;
}

ordered_json to_json(const ProtocolConfig& c) {
    ordered_json out{{"family", to_string(c.family)},
                     {"N", c.N},
                     {"n", c.n},
                     {"variant", c.variant},
                     {"x", c.first.x},
                     {"phases", phases_json(c.first.phases)}};
    if (is_combined(c.family)) {
        out["y"] = c.second.x;
        out["phases2"] = phases_json(c.second.phases);
    }
    out["state"] = phases_json(c.unknown_state);
    if (is_controlled(c.family)) {
        out["roles"] = {{"controller", party_name(c.roles.controller)},
                        {"sender", party_name(c.roles.sender)},
                        {"receiver", party_name(c.roles.receiver)}};
    }
    out["unitary"] = c.unitary;
    out["skip_startup"] = c.skip_startup;
    out["withhold_password"] = c.withhold_password;
    out["literal_schedule"] = c.literal_schedule;
    return out;
}

ordered_json to_json(const AuditReport& rep) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.rows) {
        ordered_json j = ordered_json::object();
        if (row.expected) {
            j["expected"] = {{"from", party_name(row.expected->from)},
                             {"to", party_name(row.expected->to)},
                             {"tag", row.expected->tag},
                             {"width", row.expected->width}};
        } else {
            j["expected"] = nullptr;
        }
        if (row.actual) {
            j["actual"] = {{"from", party_name(row.actual->from)},
                           {"to", party_name(row.actual->to)},
                           {"tag", row.actual->tag},
                           {"width", row.actual->bits.size()}};
        } else {
            j["actual"] = nullptr;
        }
        j["ok"] = row.ok;
        rows.push_back(j);
    }
    return {{"pass", rep.pass}, {"failure", rep.failure}, {"messages", rows}};
}

}  // namespace rio::protocol
