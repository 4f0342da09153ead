#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rio/qstate.hpp"

namespace rio::protocol {

enum class Party { Alice, Bob, Charlie };

std::string to_string(Party p);
/// Register letter owned by the party: Alice 'A', Bob 'B', Charlie 'C'.
char letter(Party p);

/// A party read a classical value before the message carrying it arrived,
/// or stepped out of its declared stage order.
class CausalityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A party touched a qubit it does not hold.
class OwnershipError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Message {
    Party from;
    Party to;
    std::string tag;
    std::vector<int> bits;
};

struct Event {
    enum class Kind { Operation, Measurement, Message };
    Kind kind;
    Party party;  // actor; sender for messages
    std::string name;  // operator name, measured label, or message tag
    std::vector<std::string> targets;
    int outcome = -1;
    double probability = 0.0;  // conditional probability of a sampled outcome
    std::optional<Message> message;
};

struct Transcript {
    std::vector<Event> events;

    std::vector<Message> messages() const;
};

/// Where measurement outcomes come from: pinned per label (post-selection,
/// branch left unnormalized) or drawn from a seeded generator (renormalized).
class OutcomeSource {
public:
    static OutcomeSource fixed(std::map<QubitLabel, int> outcomes);
    static OutcomeSource sampled(std::uint64_t seed);

    bool is_sampled() const { return sampled_; }
    int pinned(const QubitLabel& label) const;
    double uniform() { return dist_(rng_); }

private:
    bool sampled_ = false;
    std::map<QubitLabel, int> pinned_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

/// Ordered list of stages a party walks through.
class PartyMachine {
public:
    PartyMachine() = default;
    PartyMachine(Party who, std::vector<std::string> stages);

    void enter(const std::string& stage);
    const std::string& current() const;

private:
    Party who_ = Party::Alice;
    std::vector<std::string> stages_;
    std::size_t next_ = 0;
};

/// Joint state, qubit ownership, the classical channel and the transcript.
class Session {
public:
    Session(StateVector initial, std::map<QubitLabel, Party> owners, OutcomeSource source);

    void declare_stages(Party p, std::vector<std::string> stages);
    void enter(Party p, const std::string& stage);

    void apply(Party p, const Matrix& op, const std::vector<QubitLabel>& targets,
               const std::string& name);
    int measure(Party p, const QubitLabel& label);
    void send(Party from, Party to, const std::string& tag, std::vector<int> bits);
    /// Payload of a delivered message; throws CausalityError otherwise.
    const std::vector<int>& receive(Party who, const std::string& tag) const;
    bool has_received(Party who, const std::string& tag) const;

    const StateVector& state() const { return state_; }
    const Transcript& transcript() const { return transcript_; }
    /// Squared norm of the branch (pinned) or product of drawn probabilities.
    double branch_probability() const;
    std::map<QubitLabel, int> outcomes() const { return outcomes_; }

private:
    StateVector state_;
    std::map<QubitLabel, Party> owners_;
    OutcomeSource source_;
    std::map<Party, PartyMachine> machines_;
    std::map<std::pair<Party, std::string>, std::vector<int>> inbox_;
    std::map<QubitLabel, int> outcomes_;
    Transcript transcript_;
    double sampled_probability_ = 1.0;
};

}  // namespace rio::protocol
