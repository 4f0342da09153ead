#include <cmath>

#include "internal.hpp"
#include "rio/gates.hpp"

namespace rio::protocol {

std::string to_string(Family f) {
    switch (f) {
        case Family::Controlled1Q: return "controlled1q";
        case Family::Combined1Q: return "combined1q";
        case Family::ControlledNQ: return "controlled-nq";
        case Family::CombinedNQ: return "combined-nq";
    }
    throw std::invalid_argument("unknown family");
}

Family family_from_string(const std::string& name) {
    for (Family f : {Family::Controlled1Q, Family::Combined1Q, Family::ControlledNQ,
                     Family::CombinedNQ}) {
        if (to_string(f) == name) return f;
    }
    throw std::invalid_argument("unknown family '" + name + "'");
}

bool is_controlled(Family f) { return f == Family::Controlled1Q || f == Family::ControlledNQ; }
bool is_combined(Family f) { return f == Family::Combined1Q || f == Family::CombinedNQ; }

namespace {

void check_op(const OpSpec& op, std::size_t N, bool unitary, const char* which) {
    const SetIndex x(op.x, N);  // throws out_of_range
    (void)x;
    if (op.phases.size() != (std::size_t{1} << N)) {
        throw std::invalid_argument(std::string(which) + " operator needs " +
                                    std::to_string(std::size_t{1} << N) + " phases");
    }
    for (const auto& t : op.phases) {
        if (std::abs(t) == 0.0) throw std::invalid_argument("phases must be nonzero");
        if (unitary && std::abs(std::abs(t) - 1.0) > kIdentityTolerance) {
            throw std::invalid_argument("unitary mode needs unit-modulus phases");
        }
    }
}

}  // namespace

void ProtocolConfig::validate() const {
    const bool one_qubit = family == Family::Controlled1Q || family == Family::Combined1Q;
    if (one_qubit && N != 1) throw std::invalid_argument("one-qubit families need N = 1");
    if (N < 1 || N > kMaxProtocolQubits) {
        throw std::invalid_argument("N must be 1.." + std::to_string(kMaxProtocolQubits));
    }
    if (family == Family::Controlled1Q && n != 1) {
        throw std::invalid_argument("controlled1q has exactly one controller");
    }
    if (family == Family::ControlledNQ && n > N) {
        throw std::invalid_argument("controller count n must be 0..N");
    }
    if (is_combined(family) && n != 0) {
        throw std::invalid_argument("combined families take no controllers");
    }
    if (is_controlled(family)) {
        if (variant < 1 || variant > 4) throw std::invalid_argument("variant must be 1..4");
        if (roles.controller == roles.sender || roles.controller == roles.receiver ||
            roles.sender == roles.receiver) {
            throw std::invalid_argument("roles must name three distinct parties");
        }
    } else if (variant != 1) {
        throw std::invalid_argument("password variants apply to controlled families only");
    }
    check_op(first, N, unitary, "first");
    if (is_combined(family)) check_op(second, N, unitary, "second");
    if (unknown_state.size() != (std::size_t{1} << N)) {
        throw std::invalid_argument("unknown state needs " + std::to_string(std::size_t{1} << N) +
                                    " amplitudes");
    }
    double norm = 0.0;
    for (const auto& a : unknown_state) norm += std::norm(a);
    if (std::abs(norm - 1.0) > kFactorTolerance) {
        throw std::invalid_argument("unknown state is not normalized");
    }
}

OutcomeLayout outcome_layout(const ProtocolConfig& config) {
    const auto lay = detail::layout(config);
    OutcomeLayout out{lay.sender, lay.receiver, lay.controller};
    if (is_controlled(config.family) && config.skip_startup) out.c.clear();
    return out;
}

std::size_t branch_count(const ProtocolConfig& config) {
    return std::size_t{1} << outcome_layout(config).total();
}

std::map<QubitLabel, int> pin_outcomes(const ProtocolConfig& config,
                                       const std::vector<int>& bits) {
    const auto lay = outcome_layout(config);
    if (bits.size() != lay.total()) {
        throw std::invalid_argument("expected " + std::to_string(lay.total()) +
                                    " outcome bits, got " + std::to_string(bits.size()));
    }
    std::map<QubitLabel, int> pinned;
    std::size_t i = 0;
    for (const auto* group : {&lay.a, &lay.b, &lay.c}) {
        for (const auto& l : *group) {
            if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("outcomes are bits");
            pinned[l] = bits[i++];
        }
    }
    return pinned;
}

std::vector<QubitLabel> receiver_labels(const ProtocolConfig& config) {
    return detail::layout(config).unknown;
}

StateVector oracle(const ProtocolConfig& config) {
    config.validate();
    const auto labels = receiver_labels(config);
    StateVector psi(SpaceStructure(labels), config.unknown_state, true);
    Matrix op = build_T(SetIndex(config.first.x, config.N), config.first.phases, config.unitary)
                    .dense();
    if (is_combined(config.family)) {
        op = build_T(SetIndex(config.second.x, config.N), config.second.phases, config.unitary)
                 .dense() *
             op;
    }
    auto out = apply_local(op, labels, std::move(psi));
    return config.unitary ? out : out.renormalized();
}

std::vector<DeclaredMessage> declared_schedule(const ProtocolConfig& config) {
    const std::size_t N = config.N;
    const std::size_t w = config.family == Family::Controlled1Q || config.family == Family::Combined1Q
                              ? 1
                              : encoded_width(N);
    std::vector<DeclaredMessage> out;
    if (is_controlled(config.family)) {
        const auto& r = config.roles;
        const std::size_t pw = config.n;
        const Party pw_to = config.variant == 1 ? r.sender : r.receiver;
        const DeclaredMessage password{r.controller, pw_to, "password", pw};
        const std::string alpha_tag = config.family == Family::Controlled1Q ? "a,d" : "a,x";
        if (pw > 0 && config.variant != 4) out.push_back(password);
        out.push_back({r.receiver, r.sender, "b", N});
        out.push_back({r.sender, r.receiver, alpha_tag, N + w});
        if (pw > 0 && config.variant == 4) out.push_back(password);
        return out;
    }
    if (config.family == Family::Combined1Q) {
        out.push_back({Party::Charlie, Party::Alice, "c", 1});
        out.push_back({Party::Charlie, Party::Bob, "c", 1});
        out.push_back({Party::Alice, Party::Bob, "d1", 1});
        if (config.literal_schedule) {
            out.push_back({Party::Alice, Party::Charlie, "a", 1});
        } else {
            out.push_back({Party::Alice, Party::Charlie, "a,d1", 2});
        }
        out.push_back({Party::Bob, Party::Charlie, "b,d2", 2});
        return out;
    }
    out.push_back({Party::Bob, Party::Alice, "b", N});
    out.push_back({Party::Bob, Party::Charlie, "b", N});
    out.push_back({Party::Alice, Party::Bob, "a,x", N + w});
    out.push_back({Party::Alice, Party::Charlie, "x", w});
    out.push_back({Party::Charlie, Party::Bob, "c,y", N + w});
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = (seed ^ (stream * 0x9E3779B97F4A7C15ULL)) + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void randomize(ProtocolConfig& config, std::uint64_t seed) {
    const std::size_t dim = std::size_t{1} << config.N;
    config.first.phases = random_unit_phases(dim, mix_seed(seed, 1));
    if (is_combined(config.family)) config.second.phases = random_unit_phases(dim, mix_seed(seed, 2));
    std::vector<QubitLabel> scratch = numbered_labels('Y', 1, config.N);
    const auto psi = make_random_state(SpaceStructure(scratch), mix_seed(seed, 3));
    config.unknown_state.assign(psi.amplitudes().begin(), psi.amplitudes().end());
}

namespace detail {

Layout layout(const ProtocolConfig& config) {
    Layout lay;
    std::vector<QubitLabel> order;
    const auto name = [](char c, std::size_t m, bool numbered) {
        return QubitLabel(numbered ? std::string(1, c) + std::to_string(m) : std::string(1, c));
    };
    switch (config.family) {
        case Family::Controlled1Q:
        case Family::ControlledNQ: {
            const bool numbered = config.family == Family::ControlledNQ;
            const char s = letter(config.roles.sender);
            const char r = letter(config.roles.receiver);
            const char c = letter(config.roles.controller);
            for (std::size_t m = 1; m <= config.N; ++m) {
                lay.sender.push_back(name(s, m, numbered));
                lay.receiver.push_back(name(r, m, numbered));
                order.push_back(lay.sender.back());
                order.push_back(lay.receiver.back());
                if (m <= config.n) {
                    lay.controller.push_back(name(c, m, numbered));
                    order.push_back(lay.controller.back());
                }
                lay.unknown.push_back(name('Y', m, numbered));
            }
            break;
        }
        case Family::Combined1Q:
            lay.sender = {"A"};
            lay.receiver = {"B"};
            lay.controller = {"C"};
            lay.unknown = {"Z"};
            order = {"A", "B", "C"};
            break;
        case Family::CombinedNQ:
            for (std::size_t m = 1; m <= config.N; ++m) {
                lay.sender.push_back(name('A', m, true));
                lay.receiver.push_back(name('B', m, true));
                lay.controller.push_back(name('C', m, true));
                order.insert(order.end(), {lay.sender.back(), lay.receiver.back(),
                                           lay.controller.back()});
                lay.unknown.push_back(name('Y', m, true));
            }
            break;
    }
    order.insert(order.end(), lay.unknown.begin(), lay.unknown.end());
    lay.structure = SpaceStructure(std::move(order));
    return lay;
}

StateVector initial_state(const ProtocolConfig& config, const Layout& lay) {
    StateVector state(SpaceStructure{}, {1.0}, true);
    for (std::size_t m = 0; m < config.N; ++m) {
        if (m < lay.controller.size()) {
            state = state.tensor(make_ghz(lay.sender[m], lay.receiver[m], lay.controller[m]));
        } else {
            state = state.tensor(make_bell(lay.sender[m], lay.receiver[m]));
        }
    }
    state = state.tensor(StateVector(SpaceStructure(lay.unknown), config.unknown_state, true));
    if (!(state.structure() == lay.structure)) {
        throw std::logic_error("initial state does not follow the register layout");
    }
    return state;
}

std::vector<int> bits_of(std::uint64_t value, std::size_t width) {
    std::vector<int> out(width);
    for (std::size_t i = 0; i < width; ++i) out[i] = static_cast<int>((value >> (width - 1 - i)) & 1U);
    return out;
}

std::uint64_t value_of(const std::vector<int>& bits, std::size_t first, std::size_t count) {
    if (first + count > bits.size()) throw std::invalid_argument("payload too short");
    std::uint64_t v = 0;
    for (std::size_t i = first; i < first + count; ++i) v = (v << 1) | static_cast<std::uint64_t>(bits[i]);
    return v;
}

Matrix tensor_power(const std::vector<int>& bits, Matrix (*gate)(int)) {
    std::vector<Matrix> factors;
    for (int b : bits) factors.push_back(gate(b));
    return kron(factors);
}

Matrix sigma_x_power(int bit) { return bit ? gates::sigma(1) : gates::sigma(0); }

ProtocolResult finish(const ProtocolConfig& config, const Layout& lay, const Session& session,
                      const RunOptions& options) {
    ProtocolResult res;
    res.family = config.family;
    res.N = config.N;
    res.n = config.n;
    res.variant = config.variant;
    res.x = config.first.x;
    res.y = is_combined(config.family) ? config.second.x : 0;
    const auto measured = session.outcomes();
    const auto read = [&](const std::vector<QubitLabel>& labels) {
        std::vector<int> bits;
        for (const auto& l : labels) {
            auto it = measured.find(l);
            if (it != measured.end()) bits.push_back(it->second);
        }
        return bits;
    };
    res.outcomes['a'] = read(lay.sender);
    res.outcomes['b'] = read(lay.receiver);
    res.outcomes['c'] = read(lay.controller);
    res.branch_probability = session.branch_probability();
    res.oracle_state = oracle(config);
    const auto& final_state = session.state();
    if (final_state.norm_squared() > 0.0) {
        res.fidelity = reduced_fidelity(final_state, lay.unknown, res.oracle_state);
        if (measured.size() + lay.unknown.size() == final_state.structure().size()) {
            try {
                res.receiver_state = extract_factor(final_state, lay.unknown, measured);
            } catch (const NotProductError&) {
            }
        }
    }
    res.transcript = session.transcript();
    if (options.keep_final_state) res.final_state = final_state;
    return res;
}

}  // namespace detail

}  // namespace rio::protocol
