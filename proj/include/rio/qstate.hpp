#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rio {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Hard cap on register size (2^20 amplitudes).
inline constexpr std::size_t kMaxQubits = 20;

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kFactorTolerance = 1e-10;
inline constexpr double kFidelityTolerance = 1e-9;

/// Which register a qubit belongs to: the three parties' shared qubits
/// (A, B, C) and the unknown-state registers (X, Y, Z).
enum class Role : char { A = 'A', B = 'B', C = 'C', X = 'X', Y = 'Y', Z = 'Z' };

/// Short qubit name such as "A1" or "Y". The first character fixes the
/// role, the remainder (if any) must be decimal digits.
class QubitLabel {
public:
    explicit QubitLabel(std::string name);
    QubitLabel(const char* name) : QubitLabel(std::string(name)) {}

    const std::string& name() const { return name_; }
    Role role() const { return static_cast<Role>(name_.front()); }

    auto operator<=>(const QubitLabel&) const = default;

private:
    std::string name_;
};

/// Builds "A1".."AN" style label runs.
std::vector<QubitLabel> numbered_labels(char role, std::size_t first, std::size_t last);

/// Ordered register layout. The first label is the most significant bit of
/// the global amplitude index.
class SpaceStructure {
public:
    SpaceStructure() = default;
    explicit SpaceStructure(std::vector<QubitLabel> labels);
    SpaceStructure(std::initializer_list<QubitLabel> labels)
        : SpaceStructure(std::vector<QubitLabel>(labels)) {}

    std::size_t size() const { return labels_.size(); }
    std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
    const QubitLabel& operator[](std::size_t pos) const { return labels_[pos]; }
    std::span<const QubitLabel> labels() const { return labels_; }

    bool contains(const QubitLabel& label) const;
    /// Zero-based position; throws std::out_of_range for unknown labels.
    std::size_t position(const QubitLabel& label) const;
    /// Bit index of the label inside a global amplitude index.
    unsigned bit(const QubitLabel& label) const {
        return static_cast<unsigned>(labels_.size() - 1 - position(label));
    }

    SpaceStructure concat(const SpaceStructure& other) const;

    bool operator==(const SpaceStructure&) const = default;

private:
    std::vector<QubitLabel> labels_;
};

class StateVector {
public:
    StateVector(SpaceStructure structure, std::vector<Complex> amps, bool normalized);

    const SpaceStructure& structure() const { return structure_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    std::size_t size() const { return amps_.size(); }
    bool normalized() const { return normalized_; }

    double norm_squared() const;
    StateVector renormalized() const;
    /// Same amplitudes under a different label set of equal size.
    StateVector relabeled(SpaceStructure structure) const;
    /// Tensor product; `other`'s labels are appended after ours.
    StateVector tensor(const StateVector& other) const;

    /// Mutable access for kernels operating on an owned copy.
    std::vector<Complex>& raw() { return amps_; }
    void set_normalized(bool flag) { normalized_ = flag; }

private:
    SpaceStructure structure_;
    std::vector<Complex> amps_;
    bool normalized_;
};

class NotProductError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

StateVector make_basis(const SpaceStructure& structure, std::span<const int> bits);
StateVector make_basis(const SpaceStructure& structure, std::initializer_list<int> bits);
StateVector make_ghz(const QubitLabel& first, const QubitLabel& second, const QubitLabel& third);
StateVector make_bell(const QubitLabel& first, const QubitLabel& second);
/// Complex Gaussian components from a seeded mt19937_64, then normalized.
StateVector make_random_state(const SpaceStructure& structure, std::uint64_t seed);

/// Applies `op` to `targets` (first target = most significant bit of the
/// operator's index) and the identity elsewhere. Takes the state by value so
/// callers can move in a state they no longer need.
StateVector apply_local(const Matrix& op, std::span<const QubitLabel> targets, StateVector state);
StateVector apply_local(const Matrix& op, std::initializer_list<QubitLabel> targets,
                        StateVector state);

struct Projection {
    StateVector state;   // unnormalized branch, measured qubit kept in the register
    double probability;  // squared norm of the branch
};

Projection project(const QubitLabel& label, int outcome, StateVector state);

/// |<a|b>|^2 / (<a|a><b|b>).
double fidelity_up_to_phase(const StateVector& a, const StateVector& b);

/// Reads off the sub-vector on `keep` with the remaining qubits pinned to
/// `fixed_outcomes`, renormalized. Throws NotProductError if any weight lies
/// outside the pinned slice.
StateVector extract_factor(const StateVector& state, std::span<const QubitLabel> keep,
                           const std::map<QubitLabel, int>& fixed_outcomes);

/// <t|rho_keep|t> / (tr rho_keep <t|t>) where rho_keep is the reduced state of
/// `state` on `keep`. Equals fidelity_up_to_phase when the state factors.
double reduced_fidelity(const StateVector& state, std::span<const QubitLabel> keep,
                        const StateVector& target);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::span<const Matrix> factors);

}  // namespace rio
