#include <algorithm>
#include <map>

#include "rio/permops.hpp"

namespace rio {

QubitPermutation::QubitPermutation(std::vector<std::size_t> dest) : dest_(std::move(dest)) {
    std::vector<bool> hit(dest_.size(), false);
    for (std::size_t d : dest_) {
        if (d >= dest_.size() || hit[d]) {
            throw std::invalid_argument("destination list is not a bijection");
        }
        hit[d] = true;
    }
}

QubitPermutation QubitPermutation::identity(std::size_t n) {
    std::vector<std::size_t> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = i;
    return QubitPermutation(std::move(d));
}

QubitPermutation QubitPermutation::from_one_based(const std::vector<std::size_t>& dest) {
    std::vector<std::size_t> d;
    d.reserve(dest.size());
    for (std::size_t v : dest) {
        if (v == 0) throw std::invalid_argument("positions are 1-based");
        d.push_back(v - 1);
    }
    return QubitPermutation(std::move(d));
}

QubitPermutation QubitPermutation::from_action(const std::vector<std::string>& before,
                                               const std::vector<std::string>& after) {
    if (before.size() != after.size()) {
        throw std::invalid_argument("action sides have different lengths");
    }
    std::map<std::string, std::size_t> where;
    for (std::size_t i = 0; i < after.size(); ++i) {
        if (!where.emplace(after[i], i).second) {
            throw std::invalid_argument("repeated symbol '" + after[i] + "'");
        }
    }
    std::vector<std::size_t> d;
    for (const auto& s : before) {
        auto it = where.find(s);
        if (it == where.end()) throw std::invalid_argument("symbol '" + s + "' lost by action");
        d.push_back(it->second);
    }
    return QubitPermutation(std::move(d));
}

std::vector<std::size_t> QubitPermutation::dest_one_based() const {
    std::vector<std::size_t> d(dest_);
    for (auto& v : d) ++v;
    return d;
}

QubitPermutation QubitPermutation::inverse() const {
    std::vector<std::size_t> inv(dest_.size());
    for (std::size_t i = 0; i < dest_.size(); ++i) inv[dest_[i]] = i;
    return QubitPermutation(std::move(inv));
}

QubitPermutation QubitPermutation::operator*(const QubitPermutation& q) const {
    if (q.size() != size()) throw std::invalid_argument("composing permutations of unequal size");
    std::vector<std::size_t> d(size());
    for (std::size_t i = 0; i < size(); ++i) d[i] = dest_[q.dest_[i]];
    return QubitPermutation(std::move(d));
}

QubitPermutation QubitPermutation::tensor(const QubitPermutation& other) const {
    std::vector<std::size_t> d(dest_);
    for (std::size_t v : other.dest_) d.push_back(v + size());
    return QubitPermutation(std::move(d));
}

std::size_t QubitPermutation::apply_index(std::size_t basis) const {
    const std::size_t n = size();
    std::size_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if ((basis >> (n - 1 - i)) & 1U) out |= std::size_t{1} << (n - 1 - dest_[i]);
    }
    return out;
}

Matrix swap_adjacent_matrix() {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = 1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 3) = 1.0;
    return s;
}

QubitPermutation s_n(std::size_t i, std::size_t n) {
    if (i < 1 || i >= n) {
        throw std::out_of_range("adjacent swap position " + std::to_string(i) + " not in 1.." +
                                std::to_string(n == 0 ? 0 : n - 1));
    }
    auto p = QubitPermutation::identity(n).dest_one_based();
    std::swap(p[i - 1], p[i]);
    return QubitPermutation::from_one_based(p);
}

QubitPermutation f_n(std::size_t i, std::size_t j, std::size_t n) {
    if (i < 1 || i >= j || j > n) {
        throw std::out_of_range("forward rearrangement needs 1 <= i < j <= n");
    }
    // S(i,i+1) ... S(j-1,j), rightmost first.
    auto out = QubitPermutation::identity(n);
    for (std::size_t k = j - 1; k >= i; --k) out = s_n(k, n) * out;
    return out;
}

QubitPermutation p_n(std::size_t j, std::size_t k, std::size_t n) {
    if (j < 1 || j >= k || k > n) {
        throw std::out_of_range("backward rearrangement needs 1 <= j < k <= n");
    }
    // S(k-1,k) ... S(j,j+1), rightmost first.
    auto out = QubitPermutation::identity(n);
    for (std::size_t m = j; m < k; ++m) out = s_n(m, n) * out;
    return out;
}

Matrix w_n(const QubitPermutation& perm) {
    if (perm.size() > 12) throw std::invalid_argument("w_n is limited to 12 qubits");
    const std::size_t dim = std::size_t{1} << perm.size();
    Matrix w = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        w(static_cast<Eigen::Index>(perm.apply_index(b)), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return w;
}

SpaceStructure permute_structure(const QubitPermutation& perm, const SpaceStructure& structure) {
    std::vector<QubitLabel> labels(structure.labels().begin(), structure.labels().end());
    return SpaceStructure(perm.apply_list(labels));
}

StateVector apply(const QubitPermutation& perm, const StateVector& state) {
    if (perm.size() != state.structure().size()) {
        throw std::invalid_argument("permutation size does not match the register");
    }
    std::vector<Complex> out(state.size());
    for (std::size_t b = 0; b < state.size(); ++b) out[perm.apply_index(b)] = state[b];
    return StateVector(state.structure(), std::move(out), state.normalized());
}

StateVector relabel_view(const QubitPermutation& perm, const StateVector& state) {
    return apply(perm, state).relabeled(permute_structure(perm, state.structure()));
}

std::vector<Matrix> conjugate_factors(const QubitPermutation& perm,
                                      const std::vector<Matrix>& factors) {
    return perm.apply_list(factors);
}

}  // namespace rio
