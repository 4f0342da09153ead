// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "rio/gates.hpp"
#include "rio/permops.hpp"
#include "rio/protocol.hpp"
#include "rio/recovery2.hpp"
#include "rio/restricted.hpp"

namespace {

using namespace rio::protocol;
using oracle::Matrix;
using oracle::Vector;

constexpr double kFid = 1.0 - 1e-9;

struct Verdict {
    bool pass = true;
    std::string detail;
};

// Accumulates the first failure message and simple counters.
struct Check {
    bool ok = true;
    std::string first;
    std::size_t count = 0;

    void require(bool cond, const std::function<std::string()>& what) {
        ++count;
        if (!cond && ok) {
            ok = false;
            first = what();
        }
        if (!cond) ok = false;
    }
};

ProtocolConfig make(Family f, std::size_t N, std::size_t n, int variant, std::uint64_t x,
                    std::uint64_t y, std::uint64_t seed) {
    ProtocolConfig c;
    c.family = f;
    c.N = N;
    c.n = n;
    c.variant = variant;
    c.first.x = x;
    c.second.x = y;
    randomize(c, seed);
    return c;
}

Vector as_vector(const rio::StateVector& s) {
    Vector v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

// Test-side target: monomial matrices from next_permutation, applied to xi.
Vector target(const ProtocolConfig& c) {
    const std::size_t dim = std::size_t{1} << c.N;
    auto op = [&](const OpSpec& s) {
        return oracle::monomial(oracle::nth_permutation_slow(dim, s.x - 1), s.phases);
    };
    Vector xi(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) xi(static_cast<Eigen::Index>(i)) = c.unknown_state[i];
    Matrix m = op(c.first);
    if (is_combined(c.family)) m = op(c.second) * m;
    return m * xi;
}

std::string describe(const ProtocolConfig& c) {
    std::ostringstream s;
    s << to_string(c.family) << " N=" << c.N << " n=" << c.n << " v=" << c.variant
      << " x=" << c.first.x;
    if (is_combined(c.family)) s << " y=" << c.second.x;
    return s.str();
}

// Every branch faithful with the exact uniform probability.
void check_branches(Check& chk, const ProtocolConfig& c, double probability) {
    const auto want = target(c);
    double total = 0.0;
    for (const auto& r : run_all(c)) {
        const double f = r.receiver_state ? oracle::overlap(as_vector(*r.receiver_state), want) : 0.0;
        chk.require(f >= kFid && r.fidelity >= kFid,
                    [&] { return describe(c) + ": fidelity " + std::to_string(f); });
        chk.require(std::abs(r.branch_probability - probability) <= 1e-10, [&] {
            return describe(c) + ": branch probability " + std::to_string(r.branch_probability);
        });
        total += r.branch_probability;
    }
    chk.require(std::abs(total - 1.0) <= 1e-10,
                [&] { return describe(c) + ": probabilities sum to " + std::to_string(total); });
}

std::uint64_t fact(std::uint64_t k) { return k <= 1 ? 1 : k * fact(k - 1); }

std::size_t bit_length(std::uint64_t k) {
    std::size_t w = 0;
    for (; k; k >>= 1) ++w;
    return w;
}

std::vector<std::uint64_t> sample_indices(std::size_t N, std::size_t count, std::mt19937_64& rng) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(1 + rng() % fact(std::size_t{1} << N));
    return out;
}

std::vector<rio::Complex> random_unknown(std::size_t N, std::uint64_t seed) {
    const auto s = rio::make_random_state(rio::SpaceStructure(rio::numbered_labels('Y', 1, N)), seed);
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

// 1: controlled one-qubit, d in {0,1}, 20 u x 20 xi, variants 1..4.
Verdict ac1() {
    Check chk;
    std::mt19937_64 rng(101);
    for (int variant = 1; variant <= 4; ++variant) {
        for (int d = 0; d < 2; ++d) {
            for (int ui = 0; ui < 20; ++ui) {
                auto c = make(Family::Controlled1Q, 1, 1, variant,
                              static_cast<std::uint64_t>(d + 1), 1, rng());
                for (int xi = 0; xi < 20; ++xi) {
                    c.unknown_state = random_unknown(1, rng());
                    check_branches(chk, c, 1.0 / 8.0);
                }
            }
        }
    }
    return {chk.ok, chk.ok ? std::to_string(chk.count) + " checks" : chk.first};
}

// 2: combined one-qubit over (d1,u), (d2,v).
Verdict ac2() {
    Check chk;
    std::mt19937_64 rng(202);
    for (int d1 = 0; d1 < 2; ++d1) {
        for (int d2 = 0; d2 < 2; ++d2) {
            for (int ui = 0; ui < 20; ++ui) {
                auto c = make(Family::Combined1Q, 1, 0, 1, static_cast<std::uint64_t>(d1 + 1),
                              static_cast<std::uint64_t>(d2 + 1), rng());
                for (int xi = 0; xi < 20; ++xi) {
                    c.unknown_state = random_unknown(1, rng());
                    check_branches(chk, c, 1.0 / 8.0);
                }
            }
        }
    }
    return {chk.ok, chk.ok ? std::to_string(chk.count) + " checks" : chk.first};
}

// 3: controlled N-qubit. N=2 exhaustive in x, N=3 sampled.
Verdict ac3() {
    Check chk;
    std::mt19937_64 rng(303);
    for (int variant = 1; variant <= 4; ++variant) {
        for (std::size_t n : {0u, 1u, 2u}) {
            for (std::uint64_t x = 1; x <= 24; ++x) {
                for (int trial = 0; trial < 3; ++trial) {
                    const auto c = make(Family::ControlledNQ, 2, n, variant, x, 1, rng());
                    check_branches(chk, c, std::ldexp(1.0, -static_cast<int>(4 + n)));
                }
            }
        }
    }
    const auto xs = sample_indices(3, 50, rng);
    for (int variant = 1; variant <= 4; ++variant) {
        for (std::size_t n : {0u, 2u, 3u}) {
            for (auto x : xs) {
                const auto c = make(Family::ControlledNQ, 3, n, variant, x, 1, rng());
                check_branches(chk, c, std::ldexp(1.0, -static_cast<int>(6 + n)));
            }
        }
    }
    return {chk.ok, chk.ok ? std::to_string(chk.count) + " checks" : chk.first};
}

// 4: combined N-qubit. All 576 pairs at N=2, 50 sampled pairs at N=3.
Verdict ac4() {
    Check chk;
    std::mt19937_64 rng(404);
    std::size_t substituted = 0, branches = 0;
    auto run = [&](const ProtocolConfig& c) {
        const auto want = target(c);
        double total = 0.0;
        for (const auto& r : run_all(c)) {
            ++branches;
            substituted += !r.substitutions.empty();
            const double f = oracle::overlap(as_vector(*r.receiver_state), want);
            chk.require(f >= kFid, [&] { return describe(c) + ": fidelity " + std::to_string(f); });
            chk.require(std::abs(r.branch_probability - std::ldexp(1.0, -3 * static_cast<int>(c.N))) <=
                            1e-10,
                        [&] { return describe(c) + ": branch probability"; });
            total += r.branch_probability;
        }
        chk.require(std::abs(total - 1.0) <= 1e-10, [&] { return describe(c) + ": sum"; });
    };
    for (std::uint64_t x = 1; x <= 24; ++x)
        for (std::uint64_t y = 1; y <= 24; ++y) run(make(Family::CombinedNQ, 2, 0, 1, x, y, rng()));
    const auto xs = sample_indices(3, 50, rng), ys = sample_indices(3, 50, rng);
    for (std::size_t i = 0; i < 50; ++i) run(make(Family::CombinedNQ, 3, 0, 1, xs[i], ys[i], rng()));
    std::ostringstream s;
    s << branches << " branches, " << substituted << " via derived sigma_b placement";
    return {chk.ok, chk.ok ? s.str() : chk.first};
}

// 5: catalog equals {R_2(x)} as a set; the correspondence is printed.
Verdict ac5() {
    const auto report = rio::verify_catalog();
    std::ostringstream s;
    s << "set_equal=" << report.set_equal << " distinct=" << report.pairwise_distinct
      << " identity_order=" << report.all_index_match << " table=";
    for (const auto& e : report.entries) s << e.catalog_x << "->" << e.lex_x << " ";
    std::vector<bool> seen(25, false);
    bool independent = true;
    for (const auto& e : report.entries) {
        if (e.lex_x < 1) {
            independent = false;
            continue;
        }
        const auto perm = oracle::nth_permutation_slow(4, static_cast<std::uint64_t>(e.lex_x - 1));
        Eigen::Matrix4i m = Eigen::Matrix4i::Zero();
        for (int r = 0; r < 4; ++r) m(r, static_cast<int>(perm[static_cast<std::size_t>(r)] - 1)) = 1;
        independent = independent && m == e.catalog_matrix && !seen[static_cast<std::size_t>(e.lex_x)];
        seen[static_cast<std::size_t>(e.lex_x)] = true;
    }
    return {report.set_equal && report.pairwise_distinct && independent, s.str()};
}

// 6: T(1,t) R(x) = T(x,t).
Verdict ac6() {
    Check chk;
    std::mt19937_64 rng(606);
    auto one = [&](std::size_t N, std::uint64_t x) {
        const std::size_t dim = std::size_t{1} << N;
        const auto t = oracle::random_phases(dim, rng);
        const Matrix lhs = rio::build_T(rio::SetIndex(1, N), t).dense() * rio::build_R(rio::SetIndex(x, N));
        const Matrix want = oracle::monomial(oracle::nth_permutation_slow(dim, x - 1), t);
        const double err = (lhs - want).cwiseAbs().maxCoeff();
        chk.require(err <= 1e-12 && rio::decompose_identity_check(rio::SetIndex(x, N), t),
                    [&] { return "N=" + std::to_string(N) + " x=" + std::to_string(x); });
    };
    for (std::size_t N : {1u, 2u})
        for (std::uint64_t x = 1; x <= fact(std::size_t{1} << N); ++x) one(N, x);
    for (auto x : sample_indices(3, 1000, rng)) one(3, x);
    return {chk.ok, chk.ok ? std::to_string(chk.count) + " indices" : chk.first};
}

// 7: swap algebra.
Verdict ac7() {
    using rio::Interleaver;
    Check chk;
    const std::vector<Interleaver> kinds = {
        Interleaver::Lambda2, Interleaver::Omega2, Interleaver::Omega3, Interleaver::Upsilon3,
        Interleaver::Upsilon4, Interleaver::Gamma3, Interleaver::ThetaN, Interleaver::ThetaA,
        Interleaver::ThetaB, Interleaver::ThetaC, Interleaver::Xi};
    auto image = [](const std::vector<std::string>& before, const std::vector<std::string>& after,
                    std::size_t index) {
        std::map<std::string, int> bit;
        for (std::size_t p = 0; p < before.size(); ++p)
            bit[before[p]] = oracle::bit_at(index, p, before.size());
        std::size_t out = 0;
        for (const auto& s : after) out = (out << 1) | static_cast<std::size_t>(bit.at(s));
        return out;
    };
    std::size_t bases = 0;
    for (auto kind : kinds) {
        for (std::size_t N = 1; N <= 3; ++N) {
            const std::size_t nmax = rio::takes_controllers(kind) ? N : 0;
            for (std::size_t n = 0; n <= nmax; ++n) {
                const auto eq = rio::action_equation(kind, N, n);
                const auto perm = rio::interleaver(kind, N, n);
                bool ok = perm.size() == eq.before.size();
                for (std::size_t b = 0; ok && b < (std::size_t{1} << eq.before.size()); ++b, ++bases)
                    ok = perm.apply_index(b) == image(eq.before, eq.after, b);
                chk.require(ok, [&] { return rio::to_string(kind) + " action N=" + std::to_string(N); });
            }
        }
    }
    using rio::interleaver;
    using rio::QubitPermutation;
    for (std::size_t N = 1; N <= 4; ++N) {
        const auto id = QubitPermutation::identity(N);
        chk.require(interleaver(Interleaver::Gamma3, N) ==
                        id.tensor(interleaver(Interleaver::Omega2, N)) *
                            interleaver(Interleaver::Lambda2, N).tensor(id),
                    [&] { return "Gamma composition N=" + std::to_string(N); });
        chk.require(interleaver(Interleaver::ThetaN, N) ==
                        interleaver(Interleaver::Omega3, N) *
                            interleaver(Interleaver::Upsilon3, N).inverse(),
                    [&] { return "ThetaN composition N=" + std::to_string(N); });
        for (auto kind : kinds) {
            const std::size_t nmax = rio::takes_controllers(kind) ? N : 0;
            for (std::size_t n = 0; n <= nmax; ++n)
                chk.require(rio::interleaver_product(kind, N, n) == interleaver(kind, N, n),
                            [&] { return rio::to_string(kind) + " product N=" + std::to_string(N); });
        }
    }
    for (std::size_t n = 2; n <= 6; ++n) {
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = i + 1; j <= n; ++j) {
                const auto f = rio::f_n(i, j, n), p = rio::p_n(i, j, n);
                bool ok = true;
                for (std::size_t b = 0; b < (std::size_t{1} << n); ++b)
                    ok = ok && p.apply_index(f.apply_index(b)) == b && f.apply_index(p.apply_index(b)) == b;
                chk.require(ok, [&] { return "F/P duality n=" + std::to_string(n); });
            }
        }
    }
    return {chk.ok, chk.ok ? std::to_string(bases) + " basis images" : chk.first};
}

// 8: operator lemmas.
Verdict ac8() {
    Check chk;
    auto ket = [](std::size_t i, std::size_t n) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
        v(static_cast<Eigen::Index>(i)) = 1.0;
        return v;
    };
    auto proj = [](int b) {
        Matrix m = Matrix::Zero(2, 2);
        m(b, b) = 1.0;
        return m;
    };
    const Matrix I1 = Matrix::Identity(2, 2), I2 = Matrix::Identity(4, 4);
    Matrix c21 = Matrix::Zero(4, 4);
    for (int t = 0; t < 2; ++t)
        for (int c = 0; c < 2; ++c) c21(2 * (t ^ c) + c, 2 * t + c) = 1.0;
    chk.require(rio::gates::cnot_2_1() == c21, [] { return "CNOT(2,1) definition"; });
    const auto h = rio::gates::hadamard();
    for (int a = 0; a < 2; ++a)
        for (int j = 0; j < 2; ++j)
            chk.require(std::abs(((a & j) ? -1.0 : 1.0) * h(a, j) - 1.0 / std::sqrt(2.0)) < 1e-15,
                        [] { return "Hadamard phase lemma"; });
    for (int z = 0; z < 2; ++z) {
        chk.require(rio::gates::r(z) * rio::gates::r(z) == I1, [] { return "r(z)^2 = I"; });
        for (int b = 0; b < 2; ++b) {
            const Matrix g = oracle::kron(proj(b), I1) * c21;
            chk.require((oracle::kron(rio::gates::r(z), rio::gates::r(z)) * g -
                         g * oracle::kron(rio::gates::r(z), I1))
                                .norm() < 1e-15,
                        [] { return "phase commutation through CNOT"; });
        }
    }
    for (int b = 0; b < 2; ++b) {
        for (int k = 0; k < 2; ++k) {
            const Matrix op = oracle::kron(I1, oracle::kron(proj(b), I1) * c21);
            const Vector got = op * (ket(static_cast<std::size_t>(k), 3) +
                                     ket(static_cast<std::size_t>(6 | k), 3));
            const Vector rhs = oracle::kron(b ? oracle::pauli_x() : I1, I2) *
                               ket(static_cast<std::size_t>(4 * k + 2 * b + k), 3);
            chk.require((got - rhs).norm() < 1e-15, [] { return "Bell projection lemma"; });

            const Matrix opg = oracle::kron(I2, oracle::kron(proj(b), I1) * c21);
            const Vector gotg = opg * oracle::kron(Vector(ket(0, 3) + ket(7, 3)),
                                                   ket(static_cast<std::size_t>(k), 1));
            const Matrix flips = oracle::kron_all({b ? oracle::pauli_x() : I1, b ? oracle::pauli_x() : I1, I2});
            const Vector rhsg = rio::w_n(rio::f_n(3, 4, 4).inverse()) * flips *
                                ket(static_cast<std::size_t>(14 * k + b), 4);
            chk.require((gotg - rhsg).norm() < 1e-15, [] { return "GHZ projection lemma"; });
        }
    }
    std::mt19937_64 rng(808);
    for (std::size_t N = 1; N <= 3; ++N) {
        for (auto x : sample_indices(N, 20, rng)) {
            const Matrix r = rio::build_R(rio::SetIndex(x, N));
            bool ok = true;
            for (Eigen::Index j = 0; j < r.rows(); ++j)
                for (Eigen::Index k = 0; k < r.cols(); ++k)
                    for (Eigen::Index l = 0; l < r.rows(); ++l)
                        ok = ok && r(j, k) * r(l, k) == r(j, k) * (j == l ? 1.0 : 0.0);
            chk.require(ok, [] { return "row orthogonality of R_N(x)"; });
        }
    }
    return {chk.ok, chk.ok ? std::to_string(chk.count) + " identities" : chk.first};
}

// 9: message widths against the closed-form counts.
Verdict ac9() {
    Check chk;
    auto widths = [](const std::vector<rio::protocol::Message>& ms) {
        std::vector<std::size_t> w;
        for (const auto& m : ms) w.push_back(m.bits.size());
        return w;
    };
    auto audit = [&](const ProtocolConfig& c, const std::vector<std::size_t>& want) {
        const auto r = run_sampled(c, 9);
        const auto report = audit_bits(r.transcript, c);
        chk.require(report.pass && widths(r.transcript.messages()) == want,
                    [&] { return describe(c) + ": " + report.failure; });
    };
    audit(make(Family::Controlled1Q, 1, 1, 1, 2, 1, 1), {1, 1, 2});
    audit(make(Family::Combined1Q, 1, 0, 1, 2, 2, 1), {1, 1, 1, 2, 2});
    for (std::size_t N = 1; N <= 3; ++N) {
        const std::size_t w = bit_length(fact(std::size_t{1} << N));
        for (std::size_t n = 0; n <= N; ++n) {
            for (int variant = 1; variant <= 4; ++variant) {
                std::vector<std::size_t> want;
                if (variant != 4 && n > 0) want.push_back(n);
                want.push_back(N);
                want.push_back(N + w);
                if (variant == 4 && n > 0) want.push_back(n);
                audit(make(Family::ControlledNQ, N, n, variant, 1, 1, N + n), want);
            }
        }
        audit(make(Family::CombinedNQ, N, 0, 1, 1, 1, N), {N, N, N + w, w, N + w});
    }
    return {chk.ok, chk.ok ? std::to_string(chk.count) + " transcripts" : chk.first};
}

// 10: the N-qubit engines at N=1 reproduce the one-qubit engines.
Verdict ac10() {
    Check chk;
    std::mt19937_64 rng(1010);
    auto compare = [&](const ProtocolConfig& one, const ProtocolConfig& nq) {
        const auto a = run_all(one), b = run_all(nq);
        chk.require(a.size() == b.size(), [] { return "branch counts differ"; });
        for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
            const double f = oracle::overlap(as_vector(*a[k].receiver_state), as_vector(*b[k].receiver_state));
            chk.require(f >= 1.0 - 1e-12 &&
                            std::abs(a[k].branch_probability - b[k].branch_probability) < 1e-12,
                        [&] { return describe(nq) + " branch " + std::to_string(k); });
        }
    };
    for (int variant = 1; variant <= 4; ++variant) {
        for (int d = 0; d < 2; ++d) {
            auto one = make(Family::Controlled1Q, 1, 1, variant, static_cast<std::uint64_t>(d + 1), 1, rng());
            auto nq = one;
            nq.family = Family::ControlledNQ;
            compare(one, nq);
        }
    }
    for (std::uint64_t x = 1; x <= 2; ++x) {
        for (std::uint64_t y = 1; y <= 2; ++y) {
            auto one = make(Family::Combined1Q, 1, 0, 1, x, y, rng());
            auto nq = one;
            nq.family = Family::CombinedNQ;
            compare(one, nq);
        }
    }
    return {chk.ok, chk.ok ? std::to_string(chk.count) + " branch pairs" : chk.first};
}

// 11: the controller is necessary.
Verdict ac11() {
    auto worst = [](const ProtocolConfig& c) {
        double w = 1.0;
        for (const auto& r : run_all(c)) w = std::min(w, r.fidelity);
        return w;
    };
    std::ostringstream s;
    bool ok = true;
    auto skip = make(Family::Controlled1Q, 1, 1, 1, 2, 1, 1111);
    skip.skip_startup = true;
    const double ws = worst(skip);
    ok = ok && ws < kFid;
    s << "skip_startup min_fidelity=" << ws;
    auto skip_nq = make(Family::ControlledNQ, 2, 2, 1, 7, 1, 1112);
    skip_nq.skip_startup = true;
    ok = ok && worst(skip_nq) < kFid;
    for (int variant = 1; variant <= 4; ++variant) {
        auto c = make(Family::Controlled1Q, 1, 1, variant, 2, 1, 1113);
        c.withhold_password = true;
        auto nq = make(Family::ControlledNQ, 2, 1, variant, 13, 1, 1114);
        nq.withhold_password = true;
        const double w1 = worst(c), w2 = worst(nq);
        ok = ok && w1 < kFid && w2 < kFid;
        s << " v" << variant << "_withheld=" << std::min(w1, w2);
    }
    return {ok, s.str()};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double budget_s;  // 0 = untimed
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "controlled one-qubit sweep", ac1, 1.0},
        {2, "combined one-qubit sweep", ac2, 1.0},
        {3, "controlled N-qubit sweep", ac3, 120.0},
        {4, "combined N-qubit sweep", ac4, 300.0},
        {5, "two-qubit catalog set equality", ac5, 0.0},
        {6, "decomposition identity", ac6, 0.0},
        {7, "swap suite", ac7, 0.0},
        {8, "lemma suite", ac8, 0.0},
        {9, "bit-count audit", ac9, 0.0},
        {10, "N=1 engine cross-consistency", ac10, 0.0},
        {11, "negative controls", ac11, 0.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = v.pass;
        std::string detail = v.detail;
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            pass = false;
            detail += " [over time budget " + std::to_string(c.budget_s) + " s]";
        }
        failures += !pass;
        std::printf("AC%-2d %s  %s (%.2f s): %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                    detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
