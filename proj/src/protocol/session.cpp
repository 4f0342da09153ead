#include "rio/session.hpp"

#include <algorithm>

namespace rio::protocol {

std::string to_string(Party p) {
    switch (p) {
        case Party::Alice: return "Alice";
        case Party::Bob: return "Bob";
        case Party::Charlie: return "Charlie";
    }
    throw std::invalid_argument("unknown party");
}

char letter(Party p) { return to_string(p).front(); }

std::vector<Message> Transcript::messages() const {
    std::vector<Message> out;
    for (const auto& e : events) {
        if (e.message) out.push_back(*e.message);
    }
    return out;
}

OutcomeSource OutcomeSource::fixed(std::map<QubitLabel, int> outcomes) {
    OutcomeSource s;
    s.pinned_ = std::move(outcomes);
    return s;
}

OutcomeSource OutcomeSource::sampled(std::uint64_t seed) {
    OutcomeSource s;
    s.sampled_ = true;
    s.rng_.seed(seed);
    return s;
}

int OutcomeSource::pinned(const QubitLabel& label) const {
    auto it = pinned_.find(label);
    if (it == pinned_.end()) {
        throw std::invalid_argument("no outcome pinned for '" + label.name() + "'");
    }
    return it->second;
}

PartyMachine::PartyMachine(Party who, std::vector<std::string> stages)
    : who_(who), stages_(std::move(stages)) {}

void PartyMachine::enter(const std::string& stage) {
    auto it = std::find(stages_.begin() + static_cast<std::ptrdiff_t>(next_), stages_.end(), stage);
    if (it == stages_.end()) {
        throw CausalityError(to_string(who_) + " cannot enter stage '" + stage + "' here");
    }
    next_ = static_cast<std::size_t>(it - stages_.begin()) + 1;
}

const std::string& PartyMachine::current() const {
    static const std::string none = "<start>";
    return next_ == 0 ? none : stages_[next_ - 1];
}

Session::Session(StateVector initial, std::map<QubitLabel, Party> owners, OutcomeSource source)
    : state_(std::move(initial)), owners_(std::move(owners)), source_(std::move(source)) {
    for (const auto& l : state_.structure().labels()) {
        if (!owners_.count(l)) throw std::invalid_argument("qubit '" + l.name() + "' has no owner");
    }
}

void Session::declare_stages(Party p, std::vector<std::string> stages) {
    machines_[p] = PartyMachine(p, std::move(stages));
}

void Session::enter(Party p, const std::string& stage) {
    auto it = machines_.find(p);
    if (it == machines_.end()) throw CausalityError(to_string(p) + " has no declared stages");
    it->second.enter(stage);
}

void Session::apply(Party p, const Matrix& op, const std::vector<QubitLabel>& targets,
                    const std::string& name) {
    std::vector<std::string> names;
    for (const auto& t : targets) {
        auto it = owners_.find(t);
        if (it == owners_.end() || it->second != p) {
            throw OwnershipError(to_string(p) + " does not hold qubit '" + t.name() + "'");
        }
        names.push_back(t.name());
    }
    const bool was_normalized = state_.normalized();
    state_ = apply_local(op, targets, std::move(state_));
    state_.set_normalized(was_normalized);
    transcript_.events.push_back(
        Event{Event::Kind::Operation, p, name, std::move(names), -1, 0.0, std::nullopt});
}

int Session::measure(Party p, const QubitLabel& label) {
    auto it = owners_.find(label);
    if (it == owners_.end() || it->second != p) {
        throw OwnershipError(to_string(p) + " cannot measure '" + label.name() + "'");
    }
    if (outcomes_.count(label)) throw std::logic_error("'" + label.name() + "' measured twice");
    int outcome = 0;
    double conditional = 0.0;
    if (source_.is_sampled()) {
        const double total = state_.norm_squared();
        auto zero = project(label, 0, state_);
        const double p0 = zero.probability / total;
        outcome = source_.uniform() < p0 ? 0 : 1;
        auto branch = outcome == 0 ? std::move(zero) : project(label, 1, state_);
        conditional = branch.probability / total;
        state_ = branch.state.renormalized();
        sampled_probability_ *= conditional;
    } else {
        outcome = source_.pinned(label);
        auto branch = project(label, outcome, std::move(state_));
        state_ = std::move(branch.state);
    }
    outcomes_[label] = outcome;
    transcript_.events.push_back(Event{Event::Kind::Measurement, p, label.name(), {label.name()},
                                       outcome, conditional, std::nullopt});
    return outcome;
}

void Session::send(Party from, Party to, const std::string& tag, std::vector<int> bits) {
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("message payload must be bits");
    }
    inbox_[{to, tag}] = bits;
    Message m{from, to, tag, std::move(bits)};
    transcript_.events.push_back(Event{Event::Kind::Message, from, tag, {}, -1, 0.0, std::move(m)});
}

const std::vector<int>& Session::receive(Party who, const std::string& tag) const {
    auto it = inbox_.find({who, tag});
    if (it == inbox_.end()) {
        throw CausalityError(to_string(who) + " needs '" + tag + "' before it was delivered");
    }
    return it->second;
}

bool Session::has_received(Party who, const std::string& tag) const {
    return inbox_.count({who, tag}) > 0;
}

double Session::branch_probability() const {
    return source_.is_sampled() ? sampled_probability_ : state_.norm_squared();
}

}  // namespace rio::protocol
