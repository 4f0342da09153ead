#pragma once

#include <cstdint>
#include <vector>

#include "rio/qstate.hpp"

namespace rio {

/// Largest N for which (2^N)! fits the 64-bit index.
inline constexpr std::size_t kMaxRestrictedQubits = 4;

/// Index x in 1..(2^N)! of a restricted operator set.
class SetIndex {
public:
    SetIndex(std::uint64_t x, std::size_t N);

    std::uint64_t x() const { return x_; }
    std::size_t N() const { return N_; }
    /// floor(log2((2^N)!)) + 1.
    std::size_t encoded_width() const;

    bool operator==(const SetIndex&) const = default;

private:
    std::uint64_t x_;
    std::size_t N_;
};

/// (2^N)!
std::uint64_t set_count(std::size_t N);
std::size_t encoded_width(std::size_t N);

/// 1-based images: row m of T has its nonzero entry in column perm[m-1].
using Permutation = std::vector<std::size_t>;

/// x-th permutation of 1..2^N in lexicographic order.
Permutation perm_from_index(const SetIndex& x);
SetIndex index_from_perm(const Permutation& perm);

struct RestrictedOp {
    std::size_t N = 0;
    Permutation perm;
    std::vector<Complex> phases;
    bool unitary = true;

    Matrix dense() const;
};

/// Entry phases[m] at (row m, column perm[m]). Unitary mode demands unit
/// moduli; otherwise any nonzero phase is accepted.
RestrictedOp build_T(const SetIndex& x, const std::vector<Complex>& phases, bool unitary = true);
/// build_T with every phase equal to 1.
Matrix build_R(const SetIndex& x);
/// T(1,t) R(x) == T(x,t) entrywise within the identity tolerance.
bool decompose_identity_check(const SetIndex& x, const std::vector<Complex>& phases);

/// U(0,u) = diag(u0,u1); U(1,u) = [[0,u0],[u1,0]].
Matrix one_qubit_u(int d, Complex u0, Complex u1, bool unitary = true);

/// Big-endian bits of x at encoded_width(N).
std::vector<int> encode_index(const SetIndex& x);
SetIndex decode_index(const std::vector<int>& bits, std::size_t N);

/// e^{i phi} with phi uniform in [0, 2 pi) from a seeded mt19937_64.
std::vector<Complex> random_unit_phases(std::size_t count, std::uint64_t seed);

}  // namespace rio
