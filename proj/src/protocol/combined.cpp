#include "internal.hpp"
#include "rio/gates.hpp"

namespace rio::protocol {

namespace {

using detail::Layout;

constexpr const char* kSigmaBSubstitution =
    "Charlie applies sigma_b on C before T(y,v)R(x); Bob omits sigma_b on Y";

std::map<QubitLabel, Party> combined_owners(const Layout& lay, Party receiver) {
    std::map<QubitLabel, Party> owners;
    for (const auto& l : lay.sender) owners[l] = Party::Alice;
    for (const auto& l : lay.receiver) owners[l] = Party::Bob;
    for (const auto& l : lay.controller) owners[l] = Party::Charlie;
    for (const auto& l : lay.unknown) owners[l] = receiver;
    return owners;
}

// Combined N-qubit run; `derived` selects the sigma_b placement that the
// final-state proof needs instead of the one in the literal step list.
ProtocolResult combined_nq_once(const ProtocolConfig& config, OutcomeSource source,
                                const RunOptions& options, bool derived) {
    const auto lay = detail::layout(config);
    Session s(detail::initial_state(config, lay), combined_owners(lay, Party::Bob), std::move(source));
    s.declare_stages(Party::Bob, {"prepare", "recover"});
    s.declare_stages(Party::Alice, {"send"});
    s.declare_stages(Party::Charlie, {"send"});
    const std::size_t N = config.N;

    // Bob's preparing.
    s.enter(Party::Bob, "prepare");
    for (std::size_t m = 0; m < N; ++m) {
        s.apply(Party::Bob, gates::cnot(), {lay.unknown[m], lay.receiver[m]}, "CNOT");
    }
    std::vector<int> b;
    for (const auto& l : lay.receiver) b.push_back(s.measure(Party::Bob, l));
    s.send(Party::Bob, Party::Alice, "b", b);
    s.send(Party::Bob, Party::Charlie, "b", b);

    // Alice's sending.
    s.enter(Party::Alice, "send");
    const SetIndex x(config.first.x, N);
    s.apply(Party::Alice, detail::tensor_power(s.receive(Party::Alice, "b"), detail::sigma_x_power),
            lay.sender, "sigma_b");
    s.apply(Party::Alice, build_T(x, config.first.phases, config.unitary).dense(), lay.sender,
            "T(x,u)");
    for (const auto& l : lay.sender) s.apply(Party::Alice, gates::hadamard(), {l}, "H");
    std::vector<int> ax;
    for (const auto& l : lay.sender) ax.push_back(s.measure(Party::Alice, l));
    const auto xbits = encode_index(x);
    ax.insert(ax.end(), xbits.begin(), xbits.end());
    s.send(Party::Alice, Party::Bob, "a,x", ax);
    s.send(Party::Alice, Party::Charlie, "x", xbits);

    // Charlie's sending.
    s.enter(Party::Charlie, "send");
    const SetIndex x_c = decode_index(s.receive(Party::Charlie, "x"), N);
    if (derived) {
        s.apply(Party::Charlie,
                detail::tensor_power(s.receive(Party::Charlie, "b"), detail::sigma_x_power),
                lay.controller, "sigma_b");
    }
    const SetIndex y(config.second.x, N);
    s.apply(Party::Charlie, build_T(y, config.second.phases, config.unitary).dense() * build_R(x_c),
            lay.controller, "T(y,v)R(x)");
    for (const auto& l : lay.controller) s.apply(Party::Charlie, gates::hadamard(), {l}, "H");
    std::vector<int> cy;
    for (const auto& l : lay.controller) cy.push_back(s.measure(Party::Charlie, l));
    const auto ybits = encode_index(y);
    cy.insert(cy.end(), ybits.begin(), ybits.end());
    s.send(Party::Charlie, Party::Bob, "c,y", cy);

    // Bob's recovering.
    s.enter(Party::Bob, "recover");
    const auto& axr = s.receive(Party::Bob, "a,x");
    const auto& cyr = s.receive(Party::Bob, "c,y");
    const auto split = [N](const std::vector<int>& p) {
        return std::pair{std::vector<int>(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(N)),
                         decode_index(std::vector<int>(p.begin() + static_cast<std::ptrdiff_t>(N), p.end()), N)};
    };
    const auto [a_r, x_r] = split(axr);
    const auto [c_r, y_r] = split(cyr);
    if (!derived) {
        s.apply(Party::Bob, detail::tensor_power(b, detail::sigma_x_power), lay.unknown, "sigma_b");
    }
    s.apply(Party::Bob, detail::tensor_power(a_r, gates::r) * build_R(x_r), lay.unknown,
            "(r(a))R(x)");
    s.apply(Party::Bob, detail::tensor_power(c_r, gates::r) * build_R(y_r), lay.unknown,
            "(r(c))R(y)");
    auto res = detail::finish(config, lay, s, options);
    if (derived) res.substitutions.push_back(kSigmaBSubstitution);
    return res;
}

}  // namespace

ProtocolResult run_combined_1q(const ProtocolConfig& config, OutcomeSource source,
                               const RunOptions& options) {
    if (config.family != Family::Combined1Q) throw std::invalid_argument("not a combined1q config");
    config.validate();
    const auto lay = detail::layout(config);
    Session s(detail::initial_state(config, lay), combined_owners(lay, Party::Charlie),
              std::move(source));
    s.declare_stages(Party::Charlie, {"prepare", "recover"});
    s.declare_stages(Party::Alice, {"send"});
    s.declare_stages(Party::Bob, {"send"});
    const QubitLabel &A = lay.sender[0], &B = lay.receiver[0], &C = lay.controller[0],
                     &Z = lay.unknown[0];
    const int d1 = static_cast<int>(config.first.x) - 1;
    const int d2 = static_cast<int>(config.second.x) - 1;

    // Charlie's preparing.
    s.enter(Party::Charlie, "prepare");
    s.apply(Party::Charlie, gates::cnot(), {Z, C}, "CNOT");
    const int c = s.measure(Party::Charlie, C);
    s.send(Party::Charlie, Party::Alice, "c", {c});
    s.send(Party::Charlie, Party::Bob, "c", {c});

    // Alice's sending.
    s.enter(Party::Alice, "send");
    s.apply(Party::Alice, detail::sigma_x_power(s.receive(Party::Alice, "c")[0]), {A}, "sigma_c");
    s.apply(Party::Alice, one_qubit_u(d1, config.first.phases[0], config.first.phases[1], config.unitary),
            {A}, "U(d1,u)");
    s.apply(Party::Alice, gates::hadamard(), {A}, "H");
    const int a = s.measure(Party::Alice, A);
    s.send(Party::Alice, Party::Bob, "d1", {d1});
    if (config.literal_schedule) {
        s.send(Party::Alice, Party::Charlie, "a", {a});
    } else {
        s.send(Party::Alice, Party::Charlie, "a,d1", {a, d1});
    }

    // Bob's sending.
    s.enter(Party::Bob, "send");
    const int c_b = s.receive(Party::Bob, "c")[0];
    const int d1_b = s.receive(Party::Bob, "d1")[0];
    s.apply(Party::Bob, detail::sigma_x_power(d1_b) * detail::sigma_x_power(c_b), {B},
            "sigma_d1 sigma_c");
    s.apply(Party::Bob, one_qubit_u(d2, config.second.phases[0], config.second.phases[1], config.unitary),
            {B}, "U(d2,v)");
    s.apply(Party::Bob, gates::hadamard(), {B}, "H");
    const int b = s.measure(Party::Bob, B);
    s.send(Party::Bob, Party::Charlie, "b,d2", {b, d2});

    // Charlie's recovering.
    s.enter(Party::Charlie, "recover");
    int a_c = 0, d1_c = 0;
    if (config.literal_schedule) {
        a_c = s.receive(Party::Charlie, "a")[0];
        d1_c = s.receive(Party::Charlie, "d1")[0];  // never delivered to Charlie
    } else {
        const auto& ad = s.receive(Party::Charlie, "a,d1");
        a_c = ad[0];
        d1_c = ad[1];
    }
    const auto& bd = s.receive(Party::Charlie, "b,d2");
    s.apply(Party::Charlie,
            gates::r(bd[0]) * detail::sigma_x_power(bd[1]) * gates::r(a_c) *
                detail::sigma_x_power(d1_c),
            {Z}, "r(b)sigma_d2 r(a)sigma_d1");
    return detail::finish(config, lay, s, RunOptions{options});
}

ProtocolResult run_combined_nq(const ProtocolConfig& config, OutcomeSource source,
                               const RunOptions& options) {
    if (config.family != Family::CombinedNQ) throw std::invalid_argument("not a combined-nq config");
    config.validate();
    auto literal = combined_nq_once(config, source, options, false);
    if (config.literal_schedule || literal.fidelity >= 1.0 - kFidelityTolerance) return literal;
    return combined_nq_once(config, std::move(source), options, true);
}

}  // namespace rio::protocol
