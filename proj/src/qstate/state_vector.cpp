#include <cmath>
#include <random>

#include "rio/qstate.hpp"

namespace rio {

StateVector::StateVector(SpaceStructure structure, std::vector<Complex> amps, bool normalized)
    : structure_(std::move(structure)), amps_(std::move(amps)), normalized_(normalized) {
    if (amps_.size() != structure_.dimension()) {
        throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                    " does not match 2^" + std::to_string(structure_.size()));
    }
    if (normalized_ && std::abs(norm_squared() - 1.0) > kIdentityTolerance) {
        throw std::invalid_argument("state flagged normalized but norm^2 = " +
                                    std::to_string(norm_squared()));
    }
}

double StateVector::norm_squared() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return sum;
}

StateVector StateVector::renormalized() const {
    const double n2 = norm_squared();
    if (n2 == 0.0) throw std::domain_error("cannot renormalize a zero vector");
    const double scale = 1.0 / std::sqrt(n2);
    std::vector<Complex> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) out[i] = amps_[i] * scale;
    return StateVector(structure_, std::move(out), true);
}

StateVector StateVector::relabeled(SpaceStructure structure) const {
    if (structure.size() != structure_.size()) {
        throw std::invalid_argument("relabel must keep the qubit count");
    }
    return StateVector(std::move(structure), amps_, normalized_);
}

StateVector StateVector::tensor(const StateVector& other) const {
    SpaceStructure joined = structure_.concat(other.structure_);
    std::vector<Complex> out(amps_.size() * other.amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        for (std::size_t j = 0; j < other.amps_.size(); ++j) {
            out[i * other.amps_.size() + j] = amps_[i] * other.amps_[j];
        }
    }
    const bool both = normalized_ && other.normalized_;
    return StateVector(std::move(joined), std::move(out), both);
}

StateVector make_basis(const SpaceStructure& structure, std::span<const int> bits) {
    if (bits.size() != structure.size()) {
        throw std::invalid_argument("basis bit count does not match the register");
    }
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("basis bits must be 0 or 1");
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    std::vector<Complex> amps(structure.dimension());
    amps[index] = 1.0;
    return StateVector(structure, std::move(amps), true);
}

StateVector make_basis(const SpaceStructure& structure, std::initializer_list<int> bits) {
    return make_basis(structure, std::span<const int>(bits.begin(), bits.size()));
}

StateVector make_ghz(const QubitLabel& first, const QubitLabel& second, const QubitLabel& third) {
    SpaceStructure s{first, second, third};
    std::vector<Complex> amps(8);
    amps[0] = amps[7] = 1.0 / std::sqrt(2.0);
    return StateVector(std::move(s), std::move(amps), true);
}

StateVector make_bell(const QubitLabel& first, const QubitLabel& second) {
    SpaceStructure s{first, second};
    std::vector<Complex> amps(4);
    amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
    return StateVector(std::move(s), std::move(amps), true);
}

StateVector make_random_state(const SpaceStructure& structure, std::uint64_t seed) {
    if (structure.size() == 0) throw std::invalid_argument("random state needs at least one qubit");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> amps(structure.dimension());
    for (auto& a : amps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = Complex(re, im);
    }
    return StateVector(structure, std::move(amps), false).renormalized();
}

}  // namespace rio
