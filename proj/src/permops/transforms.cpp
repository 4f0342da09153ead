#include <array>

#include "rio/permops.hpp"

namespace rio {

namespace {

using Labels = std::vector<std::string>;

std::string sym(char c, std::size_t i) { return std::string(1, c) + std::to_string(i); }

void block(Labels& out, char c, std::size_t first, std::size_t last) {
    for (std::size_t i = first; i <= last; ++i) out.push_back(sym(c, i));
}

// a1b1 .. aNbN
void pairs(Labels& out, std::size_t first, std::size_t last) {
    for (std::size_t i = first; i <= last; ++i) {
        out.push_back(sym('a', i));
        out.push_back(sym('b', i));
    }
}

// Symbols per position group, e.g. "abc" gives a_i b_i c_i.
void tuples(Labels& out, const std::string& roles, std::size_t first, std::size_t last) {
    for (std::size_t i = first; i <= last; ++i) {
        for (char r : roles) out.push_back(sym(r, i));
    }
}

// Prefix shared by the Theta family: controller triples then sender pairs.
Labels theta_input(std::size_t N, std::size_t n) {
    Labels in;
    tuples(in, "abc", 1, n);
    pairs(in, n + 1, N);
    block(in, 'k', 1, N);
    return in;
}

constexpr std::array<std::pair<Interleaver, const char*>, 11> kNames{{
    {Interleaver::Lambda2, "Lambda2"},
    {Interleaver::Omega2, "Omega2"},
    {Interleaver::Omega3, "Omega3"},
    {Interleaver::Upsilon3, "Upsilon3"},
    {Interleaver::Upsilon4, "Upsilon4"},
    {Interleaver::Gamma3, "Gamma3"},
    {Interleaver::ThetaN, "ThetaN"},
    {Interleaver::ThetaA, "ThetaA"},
    {Interleaver::ThetaB, "ThetaB"},
    {Interleaver::ThetaC, "ThetaC"},
    {Interleaver::Xi, "Xi"},
}};

}  // namespace

std::string to_string(Interleaver kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    throw std::invalid_argument("unknown interleaver");
}

Interleaver interleaver_from_string(const std::string& name) {
    for (const auto& [k, n] : kNames) {
        if (name == n) return k;
    }
    throw std::invalid_argument("unknown interleaver '" + name + "'");
}

bool takes_controllers(Interleaver kind) {
    return kind == Interleaver::ThetaA || kind == Interleaver::ThetaB ||
           kind == Interleaver::ThetaC || kind == Interleaver::Xi;
}

ActionEquation action_equation(Interleaver kind, std::size_t N, std::size_t n) {
    if (N == 0) throw std::invalid_argument("interleavers need N >= 1");
    if (takes_controllers(kind) && n > N) {
        throw std::invalid_argument("controller count n exceeds N");
    }
    ActionEquation eq;
    auto& in = eq.before;
    auto& out = eq.after;
    switch (kind) {
        case Interleaver::Lambda2:
            pairs(in, 1, N);
            block(out, 'a', 1, N);
            block(out, 'b', 1, N);
            break;
        case Interleaver::Omega2:
            block(in, 'a', 1, N);
            block(in, 'b', 1, N);
            block(out, 'b', 1, N);
            block(out, 'a', 1, N);
            break;
        case Interleaver::Omega3:
            pairs(in, 1, N);
            block(in, 'c', 1, N);
            block(out, 'c', 1, N);
            pairs(out, 1, N);
            break;
        case Interleaver::Upsilon3:
            pairs(in, 1, N);
            block(in, 'k', 1, N);
            tuples(out, "abk", 1, N);
            break;
        case Interleaver::Upsilon4:
            tuples(in, "abc", 1, N);
            block(in, 'k', 1, N);
            tuples(out, "abck", 1, N);
            break;
        case Interleaver::Gamma3:
            pairs(in, 1, N);
            block(in, 'k', 1, N);
            block(out, 'a', 1, N);
            block(out, 'k', 1, N);
            block(out, 'b', 1, N);
            break;
        case Interleaver::ThetaN:
            tuples(in, "abc", 1, N);
            block(out, 'c', 1, N);
            pairs(out, 1, N);
            break;
        case Interleaver::ThetaC:
            in = theta_input(N, n);
            block(out, 'c', 1, n);
            pairs(out, 1, N);
            block(out, 'k', 1, N);
            break;
        case Interleaver::ThetaA:
            in = theta_input(N, n);
            block(out, 'c', 1, n);
            block(out, 'a', 1, N);
            block(out, 'b', 1, N);
            block(out, 'k', 1, N);
            break;
        case Interleaver::ThetaB:
            in = theta_input(N, n);
            block(out, 'c', 1, n);
            tuples(out, "abk", 1, N);
            break;
        case Interleaver::Xi: {
            auto b = action_equation(Interleaver::ThetaB, N, n);
            eq.before = std::move(b.after);
            eq.after = std::move(b.before);
            break;
        }
    }
    return eq;
}

QubitPermutation interleaver(Interleaver kind, std::size_t N, std::size_t n) {
    auto eq = action_equation(kind, N, n);
    return QubitPermutation::from_action(eq.before, eq.after);
}

QubitPermutation interleaver_product(Interleaver kind, std::size_t N, std::size_t n) {
    if (N == 0) throw std::invalid_argument("interleavers need N >= 1");
    if (takes_controllers(kind) && n > N) {
        throw std::invalid_argument("controller count n exceeds N");
    }
    const auto id = [](std::size_t m) { return QubitPermutation::identity(m); };
    switch (kind) {
        case Interleaver::Lambda2: {
            auto out = id(2 * N);
            for (std::size_t i = 1; i + 1 <= N; ++i) {
                out = p_n(2 * (N - i), 2 * N - i, 2 * N) * out;
            }
            return out;
        }
        case Interleaver::Omega2: {
            auto out = id(2 * N);
            for (std::size_t i = 1; i <= N; ++i) out = p_n(1, 2 * N, 2 * N) * out;
            return out;
        }
        case Interleaver::Omega3: {
            const auto om = interleaver_product(Interleaver::Omega2, N);
            return om.tensor(id(N)) * id(N).tensor(om);
        }
        case Interleaver::Upsilon3: {
            auto out = id(3 * N);
            for (std::size_t i = 1; i < N; ++i) out = f_n(3 * i, 2 * N + i, 3 * N) * out;
            return out;
        }
        case Interleaver::Upsilon4: {
            auto out = id(4 * N);
            for (std::size_t i = 1; i < N; ++i) out = f_n(4 * i, 3 * N + i, 4 * N) * out;
            return out;
        }
        case Interleaver::Gamma3:
            return id(N).tensor(interleaver_product(Interleaver::Omega2, N)) *
                   interleaver_product(Interleaver::Lambda2, N).tensor(id(N));
        case Interleaver::ThetaN:
            return interleaver_product(Interleaver::Omega3, N) *
                   interleaver_product(Interleaver::Upsilon3, N).inverse();
        case Interleaver::ThetaC:
        case Interleaver::ThetaA:
        case Interleaver::ThetaB:
        case Interleaver::Xi: {
            const auto theta_n = n == 0 ? id(0) : interleaver_product(Interleaver::ThetaN, n);
            const auto head = theta_n.tensor(id(2 * (N - n) + N));
            if (kind == Interleaver::ThetaC) return head;
            if (kind == Interleaver::ThetaA) {
                return id(n).tensor(interleaver_product(Interleaver::Lambda2, N)).tensor(id(N)) *
                       head;
            }
            const auto theta_b = id(n).tensor(interleaver_product(Interleaver::Upsilon3, N)) * head;
            return kind == Interleaver::ThetaB ? theta_b : theta_b.inverse();
        }
    }
    throw std::invalid_argument("unknown interleaver");
}

}  // namespace rio
