#include <cmath>
#include <set>

#include "rio/kernels.hpp"
#include "rio/qstate.hpp"

namespace rio {

namespace {

std::vector<unsigned> target_bits(const SpaceStructure& s, std::span<const QubitLabel> targets) {
    std::vector<unsigned> bits;
    std::set<QubitLabel> seen;
    for (const auto& t : targets) {
        if (!seen.insert(t).second) {
            throw std::invalid_argument("repeated target '" + t.name() + "'");
        }
        bits.push_back(s.bit(t));
    }
    return bits;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

}  // namespace

StateVector apply_local(const Matrix& op, std::span<const QubitLabel> targets, StateVector state) {
    const auto bits = target_bits(state.structure(), targets);
    if (static_cast<std::size_t>(op.rows()) != (std::size_t{1} << bits.size()) ||
        op.rows() != op.cols()) {
        throw std::invalid_argument("operator dimension does not match " +
                                    std::to_string(bits.size()) + " target(s)");
    }
    kernels::apply_parallel(state.raw(), op, bits);
    // Norm is only guaranteed for unitaries; callers re-flag if they need it.
    state.set_normalized(false);
    return state;
}

StateVector apply_local(const Matrix& op, std::initializer_list<QubitLabel> targets,
                        StateVector state) {
    return apply_local(op, std::span<const QubitLabel>(targets.begin(), targets.size()),
                       std::move(state));
}

Projection project(const QubitLabel& label, int outcome, StateVector state) {
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
    const unsigned bit = state.structure().bit(label);
    const double p = kernels::project_parallel(state.raw(), bit, outcome);
    state.set_normalized(false);
    return Projection{std::move(state), p};
}

double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
    if (!(a.structure() == b.structure())) {
        throw std::invalid_argument("fidelity needs states over the same structure");
    }
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (na == 0.0 || nb == 0.0) throw std::domain_error("fidelity of a zero-norm state");
    const double overlap = std::norm(inner(a.amplitudes(), b.amplitudes()));
    return std::min(1.0, overlap / (na * nb));
}

StateVector extract_factor(const StateVector& state, std::span<const QubitLabel> keep,
                           const std::map<QubitLabel, int>& fixed_outcomes) {
    const auto& s = state.structure();
    std::set<QubitLabel> covered(keep.begin(), keep.end());
    if (covered.size() != keep.size()) throw std::invalid_argument("repeated label in keep");
    for (const auto& [label, bit] : fixed_outcomes) {
        if (covered.count(label)) {
            throw std::invalid_argument("label '" + label.name() + "' both kept and fixed");
        }
        if (bit != 0 && bit != 1) throw std::invalid_argument("fixed outcomes must be bits");
        covered.insert(label);
    }
    for (const auto& label : s.labels()) {
        if (!covered.count(label)) {
            throw std::invalid_argument("label '" + label.name() + "' neither kept nor fixed");
        }
    }
    if (covered.size() != s.size()) throw std::out_of_range("keep/fixed name unknown labels");

    std::size_t fixed_mask = 0, fixed_value = 0;
    for (const auto& [label, bit] : fixed_outcomes) {
        const std::size_t m = std::size_t{1} << s.bit(label);
        fixed_mask |= m;
        if (bit) fixed_value |= m;
    }
    std::vector<unsigned> keep_bits;
    for (const auto& k : keep) keep_bits.push_back(s.bit(k));

    const std::size_t kdim = std::size_t{1} << keep.size();
    std::vector<Complex> out(kdim);
    for (std::size_t r = 0; r < kdim; ++r) {
        std::size_t idx = fixed_value;
        for (std::size_t t = 0; t < keep_bits.size(); ++t) {
            if ((r >> (keep_bits.size() - 1 - t)) & 1U) idx |= std::size_t{1} << keep_bits[t];
        }
        out[r] = state[idx];
    }

    const double total = state.norm_squared();
    if (total == 0.0) throw std::domain_error("cannot extract from a zero-norm state");
    double inside = 0.0;
    for (const auto& a : out) inside += std::norm(a);
    const double residual = (total - inside) / total;
    if (residual > kFactorTolerance) {
        throw NotProductError("state does not factor on the pinned outcomes (residual weight " +
                              std::to_string(residual) + ")");
    }
    std::vector<QubitLabel> kept(keep.begin(), keep.end());
    return StateVector(SpaceStructure(std::move(kept)), std::move(out), false).renormalized();
}

double reduced_fidelity(const StateVector& state, std::span<const QubitLabel> keep,
                        const StateVector& target) {
    const auto& s = state.structure();
    if (target.size() != (std::size_t{1} << keep.size())) {
        throw std::invalid_argument("target dimension does not match the kept register");
    }
    std::vector<unsigned> keep_bits;
    std::size_t keep_mask = 0;
    for (const auto& k : keep) {
        keep_bits.push_back(s.bit(k));
        keep_mask |= std::size_t{1} << keep_bits.back();
    }
    const double nt = target.norm_squared();
    const double ns = state.norm_squared();
    if (nt == 0.0 || ns == 0.0) throw std::domain_error("fidelity of a zero-norm state");

    // Sum over every configuration of the traced-out qubits of |<t|s_rest>|^2.
    double acc = 0.0;
    const std::size_t kdim = target.size();
    for (std::size_t rest = 0; rest < state.size(); ++rest) {
        if (rest & keep_mask) continue;
        Complex overlap = 0.0;
        for (std::size_t r = 0; r < kdim; ++r) {
            std::size_t idx = rest;
            for (std::size_t t = 0; t < keep_bits.size(); ++t) {
                if ((r >> (keep_bits.size() - 1 - t)) & 1U) idx |= std::size_t{1} << keep_bits[t];
            }
            overlap += std::conj(target[r]) * state[idx];
        }
        acc += std::norm(overlap);
    }
    return std::min(1.0, acc / (nt * ns));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix kron(std::span<const Matrix> factors) {
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

}  // namespace rio
