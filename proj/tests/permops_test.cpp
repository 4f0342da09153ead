#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rio/permops.hpp"

namespace {

using rio::Interleaver;
using rio::QubitPermutation;
using Labels = std::vector<std::string>;

const std::vector<Interleaver> kAllKinds = {
    Interleaver::Lambda2, Interleaver::Omega2, Interleaver::Omega3, Interleaver::Upsilon3,
    Interleaver::Upsilon4, Interleaver::Gamma3, Interleaver::ThetaN, Interleaver::ThetaA,
    Interleaver::ThetaB, Interleaver::ThetaC, Interleaver::Xi};

// Image of a basis index under "before -> after" symbol reordering.
std::size_t action_image(const Labels& before, const Labels& after, std::size_t index) {
    const std::size_t n = before.size();
    std::map<std::string, int> bit;
    for (std::size_t p = 0; p < n; ++p) bit[before[p]] = oracle::bit_at(index, p, n);
    std::size_t out = 0;
    for (const auto& s : after) out = (out << 1) | static_cast<std::size_t>(bit.at(s));
    return out;
}

void expect_realizes(const QubitPermutation& perm, const Labels& before, const Labels& after) {
    ASSERT_EQ(perm.size(), before.size());
    const std::size_t dim = std::size_t{1} << before.size();
    for (std::size_t i = 0; i < dim; ++i) {
        ASSERT_EQ(perm.apply_index(i), action_image(before, after, i)) << "basis " << i;
    }
}

std::vector<std::size_t> controller_counts(Interleaver kind, std::size_t N) {
    if (!rio::takes_controllers(kind)) return {0};
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= N; ++n) out.push_back(n);
    return out;
}

TEST(SwapAdjacent, ExchangesBasisStates) {
    const auto s = rio::swap_adjacent_matrix();
    ASSERT_EQ(s.rows(), 4);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            oracle::Vector in = oracle::Vector::Zero(4);
            in(2 * a + b) = 1.0;
            oracle::Vector out = s * in;
            EXPECT_EQ(out(2 * b + a), rio::Complex(1.0));
        }
    }
    EXPECT_LT((s * s - oracle::Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(SwapAdjacent, ConjugationSwapsFactors) {
    std::mt19937_64 rng(21);
    const auto s = rio::swap_adjacent_matrix();
    for (int t = 0; t < 10; ++t) {
        auto m = oracle::random_matrix(2, rng), n = oracle::random_matrix(2, rng);
        EXPECT_LT((s * oracle::kron(m, n) * s - oracle::kron(n, m)).norm(), 1e-12);
    }
}

TEST(SwapN, Examples) {
    EXPECT_EQ(rio::s_n(1, 2).dest_one_based(), (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(rio::s_n(2, 4).apply_list(Labels{"a", "b", "c", "d"}),
              (Labels{"a", "c", "b", "d"}));
    EXPECT_THROW(rio::s_n(4, 4), std::out_of_range);
    EXPECT_THROW(rio::s_n(0, 4), std::out_of_range);
}

TEST(SwapN, MatrixIsIdentityKronSwap) {
    for (std::size_t n = 2; n <= 6; ++n) {
        for (std::size_t i = 1; i < n; ++i) {
            oracle::Matrix expected = oracle::kron_all(
                {oracle::Matrix::Identity(1 << (i - 1), 1 << (i - 1)), rio::swap_adjacent_matrix(),
                 oracle::Matrix::Identity(1 << (n - i - 1), 1 << (n - i - 1))});
            EXPECT_EQ(rio::w_n(rio::s_n(i, n)), expected) << i << "/" << n;
        }
    }
}

TEST(ForwardRearrangement, Examples) {
    EXPECT_EQ(rio::f_n(1, 3, 4).apply_list(Labels{"q1", "q2", "q3", "q4"}),
              (Labels{"q3", "q1", "q2", "q4"}));
    EXPECT_EQ(rio::f_n(2, 3, 5), rio::s_n(2, 5));
    const auto f = rio::f_n(2, 5, 6);
    EXPECT_EQ(f * f.inverse(), QubitPermutation::identity(6));
    EXPECT_THROW(rio::f_n(3, 3, 4), std::out_of_range);
}

TEST(BackwardRearrangement, Examples) {
    EXPECT_EQ(rio::p_n(1, 3, 3).apply_list(Labels{"q1", "q2", "q3"}),
              (Labels{"q2", "q3", "q1"}));
    EXPECT_EQ(rio::p_n(3, 4, 5), rio::s_n(3, 5));
    EXPECT_THROW(rio::p_n(4, 2, 4), std::out_of_range);
}

// Move-one-qubit actions on every basis state, and F/P duality.
TEST(Rearrangement, ActionsOnAllBasesUpToSix) {
    for (std::size_t n = 2; n <= 6; ++n) {
        Labels q;
        for (std::size_t i = 1; i <= n; ++i) q.push_back("q" + std::to_string(i));
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = i + 1; j <= n; ++j) {
                Labels fwd = q;
                std::rotate(fwd.begin() + static_cast<long>(i - 1),
                            fwd.begin() + static_cast<long>(j - 1),
                            fwd.begin() + static_cast<long>(j));
                expect_realizes(rio::f_n(i, j, n), q, fwd);
                Labels bwd = q;
                std::rotate(bwd.begin() + static_cast<long>(i - 1),
                            bwd.begin() + static_cast<long>(i), bwd.begin() + static_cast<long>(j));
                expect_realizes(rio::p_n(i, j, n), q, bwd);
                const auto dual = rio::p_n(i, j, n) * rio::f_n(i, j, n);
                for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
                    ASSERT_EQ(dual.apply_index(b), b);
                }
                EXPECT_EQ(rio::p_n(i, j, n).inverse(), rio::f_n(i, j, n));
            }
        }
    }
}

TEST(Interleavers, LambdaExample) {
    expect_realizes(rio::interleaver(Interleaver::Lambda2, 2), {"a1", "b1", "a2", "b2"},
                    {"a1", "a2", "b1", "b2"});
}

TEST(Interleavers, UpsilonExample) {
    expect_realizes(rio::interleaver(Interleaver::Upsilon3, 2),
                    {"a1", "b1", "a2", "b2", "k1", "k2"}, {"a1", "b1", "k1", "a2", "b2", "k2"});
}

TEST(Interleavers, ThetaBExample) {
    expect_realizes(rio::interleaver(Interleaver::ThetaB, 2, 1),
                    {"a1", "b1", "c1", "a2", "b2", "k1", "k2"},
                    {"c1", "a1", "b1", "k1", "a2", "b2", "k2"});
}

TEST(Interleavers, OmegaSwapsHalves) {
    expect_realizes(rio::interleaver(Interleaver::Omega2, 3), {"a1", "a2", "a3", "b1", "b2", "b3"},
                    {"b1", "b2", "b3", "a1", "a2", "a3"});
}

TEST(Interleavers, ActionEquationsOnEveryBasisState) {
    for (auto kind : kAllKinds) {
        for (std::size_t N = 1; N <= 3; ++N) {
            for (auto n : controller_counts(kind, N)) {
                const auto eq = rio::action_equation(kind, N, n);
                if (eq.before.size() > 12) continue;
                SCOPED_TRACE(rio::to_string(kind) + " N=" + std::to_string(N) +
                             " n=" + std::to_string(n));
                expect_realizes(rio::interleaver(kind, N, n), eq.before, eq.after);
            }
        }
    }
}

TEST(Interleavers, ProductFormulasMatchActionsUpToFour) {
    for (auto kind : kAllKinds) {
        for (std::size_t N = 1; N <= 4; ++N) {
            for (auto n : controller_counts(kind, N)) {
                EXPECT_EQ(rio::interleaver_product(kind, N, n), rio::interleaver(kind, N, n))
                    << rio::to_string(kind) << " N=" << N << " n=" << n;
            }
        }
    }
}

TEST(Interleavers, GammaComposition) {
    using rio::interleaver;
    for (std::size_t N = 1; N <= 4; ++N) {
        const auto id = QubitPermutation::identity(N);
        EXPECT_EQ(interleaver(Interleaver::Gamma3, N),
                  id.tensor(interleaver(Interleaver::Omega2, N)) *
                      interleaver(Interleaver::Lambda2, N).tensor(id));
    }
}

TEST(Interleavers, ThetaNComposition) {
    using rio::interleaver;
    for (std::size_t N = 1; N <= 4; ++N) {
        EXPECT_EQ(interleaver(Interleaver::ThetaN, N),
                  interleaver(Interleaver::Omega3, N) *
                      interleaver(Interleaver::Upsilon3, N).inverse());
    }
}

TEST(Interleavers, ThetaFamilyComposition) {
    using rio::interleaver;
    for (std::size_t N = 1; N <= 4; ++N) {
        for (std::size_t n = 0; n <= N; ++n) {
            const auto idn = QubitPermutation::identity(n);
            const auto thc = interleaver(Interleaver::ThetaC, N, n);
            EXPECT_EQ(interleaver(Interleaver::ThetaB, N, n),
                      idn.tensor(interleaver(Interleaver::Upsilon3, N)) * thc);
            EXPECT_EQ(interleaver(Interleaver::ThetaA, N, n),
                      idn.tensor(interleaver(Interleaver::Lambda2, N))
                              .tensor(QubitPermutation::identity(N)) *
                          thc);
            EXPECT_EQ(interleaver(Interleaver::Xi, N, n),
                      interleaver(Interleaver::ThetaB, N, n).inverse());
        }
    }
}

// The ordering [I_n x Upsilon] ThetaC^-1 is not the inverse of ThetaB once
// n > 0; the inverse is ThetaC^-1 [I_n x Upsilon^-1]. Xi follows its action.
TEST(Interleavers, XiNaiveOrderDiffersFromAction) {
    using rio::interleaver;
    const std::size_t N = 2, n = 1;
    const auto idn = QubitPermutation::identity(n);
    const auto ups = interleaver(Interleaver::Upsilon3, N);
    const auto thc_inv = interleaver(Interleaver::ThetaC, N, n).inverse();
    const auto naive = idn.tensor(ups) * thc_inv;
    EXPECT_NE(naive, interleaver(Interleaver::Xi, N, n));
    EXPECT_EQ(thc_inv * idn.tensor(ups.inverse()), interleaver(Interleaver::Xi, N, n));
}

TEST(Interleavers, InvalidSizes) {
    EXPECT_THROW(rio::interleaver(Interleaver::Lambda2, 0), std::invalid_argument);
    EXPECT_THROW(rio::interleaver(Interleaver::ThetaB, 2, 3), std::invalid_argument);
    EXPECT_THROW(rio::interleaver_from_string("Sigma"), std::invalid_argument);
    for (auto kind : kAllKinds) {
        EXPECT_EQ(rio::interleaver_from_string(rio::to_string(kind)), kind);
    }
}

TEST(WN, IdentityAndBasisAction) {
    EXPECT_EQ(rio::w_n(QubitPermutation::identity(3)), oracle::Matrix::Identity(8, 8));
    const auto w = rio::w_n(rio::f_n(1, 3, 3));
    for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t q1 = (i >> 2) & 1, q2 = (i >> 1) & 1, q3 = i & 1;
        const std::size_t expected = (q3 << 2) | (q1 << 1) | q2;
        EXPECT_EQ(w(static_cast<Eigen::Index>(expected), static_cast<Eigen::Index>(i)),
                  rio::Complex(1.0));
    }
}

QubitPermutation random_perm(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> d(n);
    std::iota(d.begin(), d.end(), 0);
    std::shuffle(d.begin(), d.end(), rng);
    return QubitPermutation(d);
}

TEST(WNProperty, Homomorphism) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng() % 6;
        const auto p = random_perm(n, rng), q = random_perm(n, rng);
        EXPECT_EQ(rio::w_n(p) * rio::w_n(q), rio::w_n(p * q));
    }
}

TEST(WNProperty, NamedTransformsArePermutationMatrices) {
    for (auto kind : kAllKinds) {
        for (std::size_t N = 1; N <= 3; ++N) {
            for (auto n : controller_counts(kind, N)) {
                const auto perm = rio::interleaver(kind, N, n);
                if (perm.size() > 10) continue;
                const auto w = rio::w_n(perm);
                for (Eigen::Index r = 0; r < w.rows(); ++r) {
                    int ones = 0;
                    for (Eigen::Index c = 0; c < w.cols(); ++c) {
                        const auto v = w(r, c);
                        ASSERT_TRUE(v == rio::Complex(0.0) || v == rio::Complex(1.0));
                        ones += v == rio::Complex(1.0);
                    }
                    ASSERT_EQ(ones, 1);
                }
                EXPECT_EQ(w * w.transpose(), oracle::Matrix::Identity(w.rows(), w.cols()));
            }
        }
    }
}

TEST(ConjugateFactors, MatchesMatrixConjugation) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 4;
        const auto p = random_perm(n, rng);
        std::vector<rio::Matrix> fs;
        for (std::size_t i = 0; i < n; ++i) fs.push_back(oracle::random_matrix(2, rng));
        const auto w = rio::w_n(p);
        const oracle::Matrix lhs = w * oracle::kron_all(fs) * w.transpose();
        EXPECT_LT((lhs - oracle::kron_all(rio::conjugate_factors(p, fs))).norm(), 1e-12);
    }
}

TEST(ConjugateFactors, LambdaReordersOperatorBlocks) {
    std::mt19937_64 rng(24);
    std::vector<rio::Matrix> a{oracle::random_matrix(2, rng), oracle::random_matrix(2, rng)};
    std::vector<rio::Matrix> b{oracle::random_matrix(2, rng), oracle::random_matrix(2, rng)};
    const auto out = rio::conjugate_factors(rio::interleaver(Interleaver::Lambda2, 2),
                                            {a[0], b[0], a[1], b[1]});
    EXPECT_EQ(out[0], a[0]);
    EXPECT_EQ(out[1], a[1]);
    EXPECT_EQ(out[2], b[0]);
    EXPECT_EQ(out[3], b[1]);
}

TEST(ApplyProperty, InverseRoundTrip) {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng() % 8;
        const auto p = random_perm(n, rng);
        const auto s = rio::make_random_state(rio::SpaceStructure(rio::numbered_labels('A', 1, n)),
                                              rng());
        const auto back = rio::apply(p, rio::apply(p.inverse(), s));
        for (std::size_t i = 0; i < s.size(); ++i) ASSERT_EQ(back[i], s[i]);
    }
}

TEST(ApplyProperty, RelabelViewKeepsQubitIdentity) {
    std::mt19937_64 rng(26);
    rio::SpaceStructure st{"A", "B", "C", "Y"};
    auto s = rio::make_basis(st, {1, 0, 0, 1});
    const auto p = random_perm(4, rng);
    const auto v = rio::relabel_view(p, s);
    const auto& labels = v.structure();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) == 0.0) continue;
        EXPECT_EQ(oracle::bit_at(i, labels.position("A"), 4), 1);
        EXPECT_EQ(oracle::bit_at(i, labels.position("Y"), 4), 1);
        EXPECT_EQ(oracle::bit_at(i, labels.position("B"), 4), 0);
    }
}

TEST(QubitPermutationTest, RejectsNonBijection) {
    EXPECT_THROW(QubitPermutation({0, 0, 1}), std::invalid_argument);
    EXPECT_THROW(QubitPermutation::from_one_based({0, 1}), std::invalid_argument);
    EXPECT_THROW(QubitPermutation::from_action({"a", "b"}, {"a", "c"}), std::invalid_argument);
}

}  // namespace
