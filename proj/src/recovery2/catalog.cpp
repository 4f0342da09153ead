#include "rio/recovery2.hpp"

#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rio/restricted.hpp"

namespace rio {

namespace {

// Written-order shorthand: "C12" = CNOT(Y1,Y2), "C21" = CNOT(Y2,Y1),
// "XI"/"IX" = NOT on Y1/Y2, "XX" = NOT on both, "I" = identity.
const std::vector<std::vector<const char*>>& table() {
    static const std::vector<std::vector<const char*>> t{
        {"I"},
        {"C12"},
        {"C21", "C12", "C21"},
        {"C21", "C12"},
        {"C12", "C21"},
        {"C21"},
        {"C12", "IX"},
        {"IX"},
        {"XI", "C12", "C21"},
        {"C21", "IX"},
        {"C21", "XI", "C12", "C21"},
        {"C21", "C12", "IX"},
        {"C21", "C12", "XI"},
        {"C21", "C12", "XI", "C21"},
        {"C21", "XI"},
        {"C12", "XI", "C21"},
        {"XI"},
        {"C12", "XI"},
        {"IX", "C21"},
        {"C12", "IX", "C21"},
        {"C21", "XI", "C12"},
        {"C21", "C12", "IX", "C21"},
        {"XI", "C12"},
        {"XX"},
    };
    return t;
}

int bit_of(const std::string& label) {
    if (label == "Y1") return 1;
    if (label == "Y2") return 0;
    throw std::invalid_argument("recovery qubits are Y1 and Y2, got '" + label + "'");
}

Eigen::Matrix4i step_matrix(const GateStep& s) {
    Eigen::Matrix4i m = Eigen::Matrix4i::Zero();
    for (int col = 0; col < 4; ++col) {
        int row = col;
        switch (s.kind) {
            case GateKind::Identity: break;
            case GateKind::Not: row ^= 1 << bit_of(s.target); break;
            case GateKind::Cnot:
                if (!s.control || *s.control == s.target) {
                    throw std::invalid_argument("CNOT needs a distinct control");
                }
                if ((col >> bit_of(*s.control)) & 1) row ^= 1 << bit_of(s.target);
                break;
        }
        m(row, col) = 1;
    }
    return m;
}

}  // namespace

GateStep cnot_step(const std::string& control, const std::string& target) {
    bit_of(control);
    bit_of(target);
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    return GateStep{GateKind::Cnot, control, target};
}

GateStep not_step(const std::string& target) {
    bit_of(target);
    return GateStep{GateKind::Not, std::nullopt, target};
}

GateSequence catalog(int x) {
    if (x < 1 || x > 24) throw std::out_of_range("catalog index must be 1..24");
    GateSequence seq;
    for (const std::string tok : table()[static_cast<std::size_t>(x - 1)]) {
        if (tok == "I") seq.steps.push_back(GateStep{GateKind::Identity, std::nullopt, "Y1"});
        else if (tok == "C12") seq.steps.push_back(cnot_step("Y1", "Y2"));
        else if (tok == "C21") seq.steps.push_back(cnot_step("Y2", "Y1"));
        else if (tok == "XI") seq.steps.push_back(not_step("Y1"));
        else if (tok == "IX") seq.steps.push_back(not_step("Y2"));
        else {
            seq.steps.push_back(not_step("Y1"));
            seq.steps.push_back(not_step("Y2"));
        }
    }
    return seq;
}

std::string describe(const GateSequence& seq) {
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& s = seq.steps[i];
        if (i) os << " ";
        switch (s.kind) {
            case GateKind::Identity: os << "I"; break;
            case GateKind::Not: os << "NOT(" << s.target << ")"; break;
            case GateKind::Cnot: os << "CNOT(" << *s.control << "," << s.target << ")"; break;
        }
    }
    return os.str();
}

Eigen::Matrix4i eval_sequence(const GateSequence& seq) {
    Eigen::Matrix4i m = Eigen::Matrix4i::Identity();
    for (const auto& s : seq.steps) m = m * step_matrix(s);
    return m;
}

CatalogReport verify_catalog() {
    std::vector<Eigen::Matrix4i> lex(24);
    for (int x = 1; x <= 24; ++x) {
        lex[static_cast<std::size_t>(x - 1)] = build_R(SetIndex(static_cast<std::uint64_t>(x), 2))
                                                   .real()
                                                   .cast<int>();
    }
    CatalogReport rep;
    rep.all_index_match = true;
    std::vector<int> hits(24, 0);
    for (int x = 1; x <= 24; ++x) {
        CatalogReport::Entry e;
        e.catalog_x = x;
        e.catalog_matrix = eval_sequence(catalog(x));
        e.expected_matrix = lex[static_cast<std::size_t>(x - 1)];
        e.index_match = e.catalog_matrix == e.expected_matrix;
        for (int y = 1; y <= 24; ++y) {
            if (lex[static_cast<std::size_t>(y - 1)] == e.catalog_matrix) {
                e.lex_x = y;
                ++hits[static_cast<std::size_t>(y - 1)];
            }
        }
        rep.all_index_match = rep.all_index_match && e.index_match;
        rep.entries.push_back(e);
    }
    rep.set_equal = true;
    for (int h : hits) rep.set_equal = rep.set_equal && h == 1;
    rep.pairwise_distinct = true;
    for (std::size_t i = 0; i < 24; ++i) {
        for (std::size_t j = i + 1; j < 24; ++j) {
            if (rep.entries[i].catalog_matrix == rep.entries[j].catalog_matrix) {
                rep.pairwise_distinct = false;
            }
        }
    }
    return rep;
}

nlohmann::ordered_json to_json(const CatalogReport& report) {
    nlohmann::ordered_json corr = nlohmann::ordered_json::object();
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    const auto rows = [](const Eigen::Matrix4i& m) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (int r = 0; r < 4; ++r) out.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
        return out;
    };
    for (const auto& e : report.entries) {
        corr[std::to_string(e.catalog_x)] = e.lex_x;
        if (!e.index_match) {
            failures.push_back({{"catalog_x", e.catalog_x},
                                {"catalog", rows(e.catalog_matrix)},
                                {"expected", rows(e.expected_matrix)}});
        }
    }
    return {{"correspondence", corr},
            {"all_index_match", report.all_index_match},
            {"set_equal", report.set_equal},
            {"pairwise_distinct", report.pairwise_distinct},
            {"mismatches", failures}};
}

}  // namespace rio
