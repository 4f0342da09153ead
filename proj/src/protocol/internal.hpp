#pragma once

#include <string>
#include <vector>

#include "rio/protocol.hpp"
#include "rio/restricted.hpp"

namespace rio::protocol::detail {

/// Register layout of one run: sender/receiver/controller shares per block
/// plus the unknown-state register.
struct Layout {
    std::vector<QubitLabel> sender;      // a's
    std::vector<QubitLabel> receiver;    // b's
    std::vector<QubitLabel> controller;  // c's (GHZ blocks only)
    std::vector<QubitLabel> unknown;     // Y or Z register
    SpaceStructure structure;
};

Layout layout(const ProtocolConfig& config);

/// n GHZ blocks then N - n Bell pairs then the unknown register.
StateVector initial_state(const ProtocolConfig& config, const Layout& lay);

std::vector<int> bits_of(std::uint64_t value, std::size_t width);
std::uint64_t value_of(const std::vector<int>& bits, std::size_t first, std::size_t count);

/// Tensor of one-qubit gates, one per listed bit.
Matrix tensor_power(const std::vector<int>& bits, Matrix (*gate)(int));
Matrix sigma_x_power(int bit);

/// Common tail: fidelity, receiver extraction, bookkeeping.
ProtocolResult finish(const ProtocolConfig& config, const Layout& lay, const Session& session,
                      const RunOptions& options);

}  // namespace rio::protocol::detail
