#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rio/qstate.hpp"

namespace rio {

/// Qubit permutation on n positions. dest(i) is where the qubit at position
/// i ends up. Public constructors take 1-based positions, storage is 0-based.
class QubitPermutation {
public:
    QubitPermutation() = default;
    /// 0-based destinations; throws std::invalid_argument unless a bijection.
    explicit QubitPermutation(std::vector<std::size_t> dest);

    static QubitPermutation identity(std::size_t n);
    static QubitPermutation from_one_based(const std::vector<std::size_t>& dest);
    /// Permutation taking the label order `before` to `after`.
    static QubitPermutation from_action(const std::vector<std::string>& before,
                                        const std::vector<std::string>& after);

    std::size_t size() const { return dest_.size(); }
    std::size_t dest(std::size_t i) const { return dest_[i]; }
    std::vector<std::size_t> dest_one_based() const;

    QubitPermutation inverse() const;
    /// (P * Q) applies Q first.
    QubitPermutation operator*(const QubitPermutation& q) const;
    /// Block concatenation: this on the leading qubits, `other` after them.
    QubitPermutation tensor(const QubitPermutation& other) const;

    /// Image of a computational-basis index (first position = MSB).
    std::size_t apply_index(std::size_t basis) const;

    /// new[dest(i)] = old[i].
    template <class T>
    std::vector<T> apply_list(const std::vector<T>& items) const {
        if (items.size() != dest_.size()) {
            throw std::invalid_argument("list length does not match permutation size");
        }
        std::vector<T> out(items);
        for (std::size_t i = 0; i < items.size(); ++i) out[dest_[i]] = items[i];
        return out;
    }

    bool operator==(const QubitPermutation&) const = default;

private:
    std::vector<std::size_t> dest_;
};

/// Exchanges two neighbouring qubits: |ab> -> |ba>.
Matrix swap_adjacent_matrix();

/// Swap of positions i and i+1.
QubitPermutation s_n(std::size_t i, std::size_t n);
/// Moves the qubit at j forward to i, shifting i..j-1 right by one.
QubitPermutation f_n(std::size_t i, std::size_t j, std::size_t n);
/// Moves the qubit at j backward to k, shifting j+1..k left by one.
QubitPermutation p_n(std::size_t j, std::size_t k, std::size_t n);

enum class Interleaver {
    Lambda2,
    Omega2,
    Omega3,
    Upsilon3,
    Upsilon4,
    Gamma3,
    ThetaN,
    ThetaA,
    ThetaB,
    ThetaC,
    Xi,
};

std::string to_string(Interleaver kind);
Interleaver interleaver_from_string(const std::string& name);
/// Whether `n` (the controller count) is meaningful for this kind.
bool takes_controllers(Interleaver kind);

/// Label orders before and after the transform, e.g. {"a1","b1",...}.
struct ActionEquation {
    std::vector<std::string> before;
    std::vector<std::string> after;
};

/// N >= 1 blocks; 0 <= n <= N for the Theta/Xi kinds (ignored otherwise).
ActionEquation action_equation(Interleaver kind, std::size_t N, std::size_t n = 0);
/// The permutation realizing action_equation(kind, N, n).
QubitPermutation interleaver(Interleaver kind, std::size_t N, std::size_t n = 0);
/// The same transform assembled from its swap/rearrangement product formula.
QubitPermutation interleaver_product(Interleaver kind, std::size_t N, std::size_t n = 0);

/// 2^n x 2^n 0/1 matrix of the permutation. Test-time only, n <= 12.
Matrix w_n(const QubitPermutation& perm);

/// Moves amplitudes by the permutation; labels stay where they are.
StateVector apply(const QubitPermutation& perm, const StateVector& state);
/// Same physical state with labels and amplitudes both moved, so every label
/// still names the same qubit.
StateVector relabel_view(const QubitPermutation& perm, const StateVector& state);
SpaceStructure permute_structure(const QubitPermutation& perm, const SpaceStructure& structure);

/// P (M_1 x ... x M_n) P^-1 as a factor list: new[dest(i)] = old[i].
std::vector<Matrix> conjugate_factors(const QubitPermutation& perm,
                                      const std::vector<Matrix>& factors);

}  // namespace rio
