#include "internal.hpp"
#include "rio/gates.hpp"

namespace rio::protocol {

namespace {

using detail::Layout;

std::map<QubitLabel, Party> controlled_owners(const ProtocolConfig& config, const Layout& lay) {
    std::map<QubitLabel, Party> owners;
    for (const auto& l : lay.sender) owners[l] = config.roles.sender;
    for (const auto& l : lay.receiver) owners[l] = config.roles.receiver;
    for (const auto& l : lay.controller) owners[l] = config.roles.controller;
    for (const auto& l : lay.unknown) owners[l] = config.roles.receiver;
    return owners;
}

void declare_controlled_stages(Session& s, const Roles& r) {
    s.declare_stages(r.controller, {"startup", "allow", "late-allow"});
    s.declare_stages(r.receiver, {"prior-prepare", "prepare", "supplement", "recover", "final-recover"});
    s.declare_stages(r.sender, {"prior-send", "send"});
}

// Controller's outcome bits, or zeros when no password reaches `who`.
std::vector<int> password_for(const Session& s, const ProtocolConfig& config, Party who) {
    if (config.skip_startup || config.withhold_password || config.n == 0) {
        return std::vector<int>(config.n, 0);
    }
    return s.receive(who, "password");
}

void allow(Session& s, const ProtocolConfig& config, const std::vector<int>& c, Party to,
           const std::string& stage) {
    if (config.skip_startup || config.withhold_password || config.n == 0) return;
    s.enter(config.roles.controller, stage);
    s.send(config.roles.controller, to, "password", c);
}

std::vector<int> startup(Session& s, const ProtocolConfig& config, const Layout& lay) {
    std::vector<int> c;
    if (config.skip_startup) return std::vector<int>(config.n, 0);
    s.enter(config.roles.controller, "startup");
    for (const auto& l : lay.controller) {
        s.apply(config.roles.controller, gates::hadamard(), {l}, "H");
        c.push_back(s.measure(config.roles.controller, l));
    }
    return c;
}

}  // namespace

ProtocolResult run_controlled_1q(const ProtocolConfig& config, OutcomeSource source,
                                 const RunOptions& options) {
    if (config.family != Family::Controlled1Q) throw std::invalid_argument("not a controlled1q config");
    config.validate();
    const auto lay = detail::layout(config);
    const auto& r = config.roles;
    Session s(detail::initial_state(config, lay), controlled_owners(config, lay), std::move(source));
    declare_controlled_stages(s, r);
    const QubitLabel& S = lay.sender[0];
    const QubitLabel& R = lay.receiver[0];
    const QubitLabel& Y = lay.unknown[0];
    const int v = config.variant;

    // Controlling and allowing steps.
    const auto c = startup(s, config, lay);
    if (v == 1) allow(s, config, c, r.sender, "allow");
    if (v == 2) allow(s, config, c, r.receiver, "allow");

    // Preparing step.
    if (v == 2) {
        s.enter(r.receiver, "prior-prepare");
        s.apply(r.receiver, gates::r(password_for(s, config, r.receiver)[0]), {R}, "r(c)");
    }
    s.enter(r.receiver, "prepare");
    s.apply(r.receiver, gates::cnot(), {Y, R}, "CNOT");
    const int b = s.measure(r.receiver, R);
    if (v == 3) {
        allow(s, config, c, r.receiver, "allow");
        s.enter(r.receiver, "supplement");
        const int cp = password_for(s, config, r.receiver)[0];
        s.apply(r.receiver, kron(gates::r(cp), gates::r(cp)), {R, Y}, "r(c)r(c)");
    }
    s.send(r.receiver, r.sender, "b", {b});

    // Sending step.
    if (v == 1) {
        s.enter(r.sender, "prior-send");
        s.apply(r.sender, gates::r(password_for(s, config, r.sender)[0]), {S}, "r(c)");
    }
    s.enter(r.sender, "send");
    const int d = static_cast<int>(config.first.x) - 1;
    const int b_seen = s.receive(r.sender, "b")[0];
    s.apply(r.sender, detail::sigma_x_power(b_seen), {S}, "sigma_b");
    s.apply(r.sender, one_qubit_u(d, config.first.phases[0], config.first.phases[1], config.unitary),
            {S}, "U(d,u)");
    s.apply(r.sender, gates::hadamard(), {S}, "H");
    const int a = s.measure(r.sender, S);
    s.send(r.sender, r.receiver, "a,d", {a, d});

    // Recovery step.
    s.enter(r.receiver, "recover");
    const auto& ad = s.receive(r.receiver, "a,d");
    s.apply(r.receiver, gates::r(ad[0]) * detail::sigma_x_power(ad[1]), {Y}, "r(a)sigma_d");
    if (v == 4) {
        allow(s, config, c, r.receiver, "late-allow");
        s.enter(r.receiver, "final-recover");
        const int cp = password_for(s, config, r.receiver)[0];
        const double sign = (cp * ad[1]) % 2 ? -1.0 : 1.0;
        s.apply(r.receiver, gates::r(cp), {R}, "r(c)");
        s.apply(r.receiver, sign * gates::r(cp), {Y}, "(-1)^(cd) r(c)");
    }
    return detail::finish(config, lay, s, options);
}

ProtocolResult run_controlled_nq(const ProtocolConfig& config, OutcomeSource source,
                                 const RunOptions& options) {
    if (config.family != Family::ControlledNQ) throw std::invalid_argument("not a controlled-nq config");
    config.validate();
    const auto lay = detail::layout(config);
    const auto& r = config.roles;
    Session s(detail::initial_state(config, lay), controlled_owners(config, lay), std::move(source));
    declare_controlled_stages(s, r);
    const std::size_t N = config.N;
    const std::size_t n = config.n;
    const int v = config.variant;
    const std::vector<QubitLabel> ctrl_recv(lay.receiver.begin(), lay.receiver.begin() + static_cast<std::ptrdiff_t>(n));
    const std::vector<QubitLabel> ctrl_send(lay.sender.begin(), lay.sender.begin() + static_cast<std::ptrdiff_t>(n));
    const std::vector<QubitLabel> ctrl_y(lay.unknown.begin(), lay.unknown.begin() + static_cast<std::ptrdiff_t>(n));

    // Controllers' startup.
    const auto c = startup(s, config, lay);
    if (v == 1) allow(s, config, c, r.sender, "allow");
    if (v == 2) allow(s, config, c, r.receiver, "allow");

    // Receiver's (prior) preparation.
    if (v == 2 && n > 0) {
        s.enter(r.receiver, "prior-prepare");
        s.apply(r.receiver, detail::tensor_power(password_for(s, config, r.receiver), gates::r),
                ctrl_recv, "P_pre");
    }
    s.enter(r.receiver, "prepare");
    std::vector<int> b;
    for (std::size_t m = 0; m < N; ++m) {
        s.apply(r.receiver, gates::cnot(), {lay.unknown[m], lay.receiver[m]}, "CNOT");
    }
    for (const auto& l : lay.receiver) b.push_back(s.measure(r.receiver, l));
    if (v == 3) allow(s, config, c, r.receiver, "allow");
    s.send(r.receiver, r.sender, "b", b);

    // Sender's (prior) sending.
    if (v == 1 && n > 0) {
        s.enter(r.sender, "prior-send");
        s.apply(r.sender, detail::tensor_power(password_for(s, config, r.sender), gates::r),
                ctrl_send, "S_pre");
    }
    s.enter(r.sender, "send");
    const auto b_seen = s.receive(r.sender, "b");
    s.apply(r.sender, detail::tensor_power(b_seen, detail::sigma_x_power), lay.sender, "sigma_b");
    const SetIndex x(config.first.x, N);
    s.apply(r.sender, build_T(x, config.first.phases, config.unitary).dense(), lay.sender, "T(x,t)");
    std::vector<int> payload;
    for (const auto& l : lay.sender) s.apply(r.sender, gates::hadamard(), {l}, "H");
    for (const auto& l : lay.sender) payload.push_back(s.measure(r.sender, l));
    const auto xbits = encode_index(x);
    payload.insert(payload.end(), xbits.begin(), xbits.end());
    s.send(r.sender, r.receiver, "a,x", payload);

    // Receiver's (supplementary) recovery.
    const auto& ax = s.receive(r.receiver, "a,x");
    const std::vector<int> a(ax.begin(), ax.begin() + static_cast<std::ptrdiff_t>(N));
    const SetIndex x_seen = decode_index(std::vector<int>(ax.begin() + static_cast<std::ptrdiff_t>(N), ax.end()), N);
    if (v == 3 && n > 0) {
        s.enter(r.receiver, "supplement");
        const auto cp = password_for(s, config, r.receiver);
        s.apply(r.receiver, detail::tensor_power(cp, gates::r), ctrl_recv, "R_add(B)");
        s.apply(r.receiver, detail::tensor_power(cp, gates::r), ctrl_y, "R_add(Y)");
    }
    s.enter(r.receiver, "recover");
    const Matrix R = build_R(x_seen);
    s.apply(r.receiver, detail::tensor_power(a, gates::r) * R, lay.unknown, "(r(a))R(x)");
    if (v == 4 && n > 0) {
        allow(s, config, c, r.receiver, "late-allow");
        s.enter(r.receiver, "final-recover");
        auto cp = password_for(s, config, r.receiver);
        s.apply(r.receiver, detail::tensor_power(cp, gates::r), ctrl_recv, "R_aft(B)");
        cp.resize(N, 0);
        s.apply(r.receiver, R * detail::tensor_power(cp, gates::r) * R.adjoint(), lay.unknown,
                "R_aft(Y)");
    }
    return detail::finish(config, lay, s, options);
}

}  // namespace rio::protocol
