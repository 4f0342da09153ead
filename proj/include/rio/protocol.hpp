#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rio/qstate.hpp"
#include "rio/session.hpp"

namespace rio::protocol {

enum class Family { Controlled1Q, Combined1Q, ControlledNQ, CombinedNQ };

std::string to_string(Family f);
/// Accepts controlled1q, combined1q, controlled-nq, combined-nq.
Family family_from_string(const std::string& name);
bool is_controlled(Family f);
bool is_combined(Family f);

/// Protocol runs are capped at four qubits per operator.
inline constexpr std::size_t kMaxProtocolQubits = 4;

/// A restricted-set operator: index x (for one qubit x = d + 1) and 2^N phases.
struct OpSpec {
    std::uint64_t x = 1;
    std::vector<Complex> phases;
};

/// Which party plays which part in the controlled families.
struct Roles {
    Party controller = Party::Charlie;
    Party sender = Party::Alice;
    Party receiver = Party::Bob;
};

struct ProtocolConfig {
    Family family = Family::Controlled1Q;
    std::size_t N = 1;
    std::size_t n = 0;  // controllers; controlled-nq only (1 for controlled1q)
    int variant = 1;    // password routing, controlled families only
    OpSpec first;
    OpSpec second;      // combined families only
    std::vector<Complex> unknown_state;  // 2^N amplitudes, normalized
    Roles roles;
    bool unitary = true;

    // Negative controls.
    bool skip_startup = false;
    bool withhold_password = false;
    // Two-sender schedules with the literal step list (see combined engines).
    bool literal_schedule = false;

    /// Throws std::invalid_argument on inconsistent parameters.
    void validate() const;
};

struct ProtocolResult {
    Family family = Family::Controlled1Q;
    std::size_t N = 1;
    std::size_t n = 0;
    int variant = 1;
    std::uint64_t x = 1;
    std::uint64_t y = 0;  // 0 for single-operator families
    std::map<char, std::vector<int>> outcomes;  // 'a', 'b', 'c'
    double branch_probability = 0.0;
    double fidelity = 0.0;
    Transcript transcript;
    std::optional<StateVector> final_state;  // unnormalized branch
    std::optional<StateVector> receiver_state;  // empty when the register is not a product
    StateVector oracle_state{SpaceStructure{}, {1.0}, true};
    std::vector<std::string> substitutions;
};

struct RunOptions {
    bool keep_final_state = false;
};

/// Measured labels grouped as a's, b's, c's in the order outcome bits are read.
struct OutcomeLayout {
    std::vector<QubitLabel> a, b, c;
    std::size_t total() const { return a.size() + b.size() + c.size(); }
};
OutcomeLayout outcome_layout(const ProtocolConfig& config);

/// Bits in a-b-c order mapped onto labels.
std::map<QubitLabel, int> pin_outcomes(const ProtocolConfig& config, const std::vector<int>& bits);
std::size_t branch_count(const ProtocolConfig& config);

/// One post-selected branch.
ProtocolResult run_branch(const ProtocolConfig& config, const std::vector<int>& outcome_bits,
                          const RunOptions& options = {});
/// One run with outcomes drawn from a seeded generator.
ProtocolResult run_sampled(const ProtocolConfig& config, std::uint64_t seed,
                           const RunOptions& options = {});
/// Every branch, in increasing order of the a-b-c bit string.
std::vector<ProtocolResult> run_all(const ProtocolConfig& config, const RunOptions& options = {});
/// Serial twin of run_all, kept for tests and the benchmark.
std::vector<ProtocolResult> run_all_serial(const ProtocolConfig& config,
                                           const RunOptions& options = {});

ProtocolResult run_controlled_1q(const ProtocolConfig& config, OutcomeSource source,
                                 const RunOptions& options = {});
ProtocolResult run_combined_1q(const ProtocolConfig& config, OutcomeSource source,
                               const RunOptions& options = {});
ProtocolResult run_controlled_nq(const ProtocolConfig& config, OutcomeSource source,
                                 const RunOptions& options = {});
ProtocolResult run_combined_nq(const ProtocolConfig& config, OutcomeSource source,
                               const RunOptions& options = {});

/// Target operator (or ordered product) applied directly to the unknown state.
StateVector oracle(const ProtocolConfig& config);
/// Labels of the receiver's register.
std::vector<QubitLabel> receiver_labels(const ProtocolConfig& config);

struct DeclaredMessage {
    Party from;
    Party to;
    std::string tag;
    std::size_t width;
};

/// Message schedule the family promises for this configuration.
std::vector<DeclaredMessage> declared_schedule(const ProtocolConfig& config);

struct AuditReport {
    struct Row {
        std::optional<DeclaredMessage> expected;
        std::optional<Message> actual;
        bool ok = false;
    };
    std::vector<Row> rows;
    bool pass = false;
    std::string failure;  // first failing step, empty on pass
};

AuditReport audit_bits(const std::vector<Message>& messages, const ProtocolConfig& config);
AuditReport audit_bits(const Transcript& transcript, const ProtocolConfig& config);

nlohmann::ordered_json to_json(const ProtocolResult& result);
nlohmann::ordered_json to_json(const ProtocolConfig& config);
nlohmann::ordered_json to_json(const AuditReport& report);
nlohmann::ordered_json to_json(const Message& message);

}  // namespace rio::protocol

namespace rio::protocol {

/// splitmix64 step over seed ^ stream; sub-seeds for independent draws.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
/// Fills the operator phases and the unknown state from `seed`.
void randomize(ProtocolConfig& config, std::uint64_t seed);

}  // namespace rio::protocol
