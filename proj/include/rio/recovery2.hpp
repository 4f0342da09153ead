#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace rio {

enum class GateKind { Cnot, Not, Identity };

/// Qubits are named "Y1" (most significant) and "Y2".
struct GateStep {
    GateKind kind = GateKind::Identity;
    std::optional<std::string> control;
    std::string target;
};

/// Steps as written, leftmost first; the rightmost step acts first.
struct GateSequence {
    std::vector<GateStep> steps;
};

GateStep cnot_step(const std::string& control, const std::string& target);
GateStep not_step(const std::string& target);

/// The two-qubit recovery sequence for x in 1..24.
GateSequence catalog(int x);
std::string describe(const GateSequence& seq);

Eigen::Matrix4i eval_sequence(const GateSequence& seq);

struct CatalogReport {
    struct Entry {
        int catalog_x = 0;
        int lex_x = 0;  // 0 when no build_R(x) matches
        bool index_match = false;
        Eigen::Matrix4i catalog_matrix;
        Eigen::Matrix4i expected_matrix;
    };
    std::vector<Entry> entries;
    bool all_index_match = false;
    bool set_equal = false;
    bool pairwise_distinct = false;
};

CatalogReport verify_catalog();
/// {"correspondence": {"<catalog_x>": lex_x, ...}, "all_index_match": ..., ...}
nlohmann::ordered_json to_json(const CatalogReport& report);

}  // namespace rio
