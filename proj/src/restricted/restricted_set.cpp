#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "rio/restricted.hpp"

namespace rio {

namespace {

std::uint64_t factorial(std::uint64_t k) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= k; ++i) f *= i;
    return f;
}

void check_N(std::size_t N) {
    if (N < 1 || N > kMaxRestrictedQubits) {
        throw std::invalid_argument("restricted sets support N = 1.." +
                                    std::to_string(kMaxRestrictedQubits));
    }
}

}  // namespace

std::uint64_t set_count(std::size_t N) {
    check_N(N);
    return factorial(std::uint64_t{1} << N);
}

std::size_t encoded_width(std::size_t N) {
    // floor(log2(v)) + 1 is the bit length of v.
    return static_cast<std::size_t>(std::bit_width(set_count(N)));
}

SetIndex::SetIndex(std::uint64_t x, std::size_t N) : x_(x), N_(N) {
    if (x < 1 || x > set_count(N)) {
        throw std::out_of_range("set index " + std::to_string(x) + " outside 1.." +
                                std::to_string(set_count(N)));
    }
}

std::size_t SetIndex::encoded_width() const { return rio::encoded_width(N_); }

Permutation perm_from_index(const SetIndex& x) {
    const std::size_t dim = std::size_t{1} << x.N();
    std::vector<std::size_t> pool(dim);
    for (std::size_t i = 0; i < dim; ++i) pool[i] = i + 1;
    std::uint64_t rank = x.x() - 1;
    Permutation out;
    for (std::size_t left = dim; left > 0; --left) {
        const std::uint64_t f = factorial(left - 1);
        const auto pick = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

SetIndex index_from_perm(const Permutation& perm) {
    const std::size_t dim = perm.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("permutation length must be 2^N");
    }
    const auto N = static_cast<std::size_t>(std::countr_zero(dim));
    check_N(N);
    std::vector<bool> used(dim + 1, false);
    std::uint64_t rank = 0;
    for (std::size_t m = 0; m < dim; ++m) {
        const std::size_t v = perm[m];
        if (v < 1 || v > dim || used[v]) throw std::invalid_argument("not a permutation");
        std::uint64_t smaller = 0;
        for (std::size_t u = 1; u < v; ++u) smaller += used[u] ? 0 : 1;
        rank += smaller * factorial(dim - 1 - m);
        used[v] = true;
    }
    return SetIndex(rank + 1, N);
}

Matrix RestrictedOp::dense() const {
    const auto dim = static_cast<Eigen::Index>(perm.size());
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index row = 0; row < dim; ++row) {
        m(row, static_cast<Eigen::Index>(perm[static_cast<std::size_t>(row)] - 1)) =
            phases[static_cast<std::size_t>(row)];
    }
    return m;
}

RestrictedOp build_T(const SetIndex& x, const std::vector<Complex>& phases, bool unitary) {
    const std::size_t dim = std::size_t{1} << x.N();
    if (phases.size() != dim) {
        throw std::invalid_argument("expected " + std::to_string(dim) + " phases, got " +
                                    std::to_string(phases.size()));
    }
    for (const auto& t : phases) {
        if (std::abs(t) == 0.0) throw std::invalid_argument("phase must be nonzero");
        if (unitary && std::abs(std::abs(t) - 1.0) > kIdentityTolerance) {
            throw std::invalid_argument("unitary mode needs unit-modulus phases");
        }
    }
    return RestrictedOp{x.N(), perm_from_index(x), phases, unitary};
}

Matrix build_R(const SetIndex& x) {
    return build_T(x, std::vector<Complex>(std::size_t{1} << x.N(), 1.0)).dense();
}

bool decompose_identity_check(const SetIndex& x, const std::vector<Complex>& phases) {
    const Matrix diag = build_T(SetIndex(1, x.N()), phases, false).dense();
    const Matrix lhs = diag * build_R(x);
    const Matrix rhs = build_T(x, phases, false).dense();
    return (lhs - rhs).cwiseAbs().maxCoeff() <= kIdentityTolerance;
}

Matrix one_qubit_u(int d, Complex u0, Complex u1, bool unitary) {
    if (d != 0 && d != 1) throw std::invalid_argument("d must be a bit");
    return build_T(SetIndex(static_cast<std::uint64_t>(d) + 1, 1), {u0, u1}, unitary).dense();
}

std::vector<int> encode_index(const SetIndex& x) {
    const std::size_t w = x.encoded_width();
    std::vector<int> bits(w);
    for (std::size_t i = 0; i < w; ++i) bits[i] = static_cast<int>((x.x() >> (w - 1 - i)) & 1U);
    return bits;
}

SetIndex decode_index(const std::vector<int>& bits, std::size_t N) {
    if (bits.size() != encoded_width(N)) {
        throw std::invalid_argument("expected " + std::to_string(encoded_width(N)) +
                                    " index bits, got " + std::to_string(bits.size()));
    }
    std::uint64_t x = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("index bits must be 0/1");
        x = (x << 1) | static_cast<std::uint64_t>(b);
    }
    return SetIndex(x, N);
}

std::vector<Complex> random_unit_phases(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(std::polar(1.0, angle(rng)));
    return out;
}

}  // namespace rio
