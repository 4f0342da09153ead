#include <omp.h>

#include "internal.hpp"

namespace rio::protocol {

namespace {

ProtocolResult dispatch(const ProtocolConfig& config, OutcomeSource source, const RunOptions& options) {
    switch (config.family) {
        case Family::Controlled1Q: return run_controlled_1q(config, std::move(source), options);
        case Family::Combined1Q: return run_combined_1q(config, std::move(source), options);
        case Family::ControlledNQ: return run_controlled_nq(config, std::move(source), options);
        case Family::CombinedNQ: return run_combined_nq(config, std::move(source), options);
    }
    throw std::invalid_argument("unknown family");
}

std::vector<int> branch_bits(std::size_t branch, std::size_t width) {
    return detail::bits_of(branch, width);
}

}  // namespace

ProtocolResult run_branch(const ProtocolConfig& config, const std::vector<int>& outcome_bits,
                          const RunOptions& options) {
    config.validate();
    return dispatch(config, OutcomeSource::fixed(pin_outcomes(config, outcome_bits)), options);
}

ProtocolResult run_sampled(const ProtocolConfig& config, std::uint64_t seed,
                           const RunOptions& options) {
    config.validate();
    return dispatch(config, OutcomeSource::sampled(seed), options);
}

std::vector<ProtocolResult> run_all_serial(const ProtocolConfig& config, const RunOptions& options) {
    config.validate();
    const std::size_t width = outcome_layout(config).total();
    std::vector<ProtocolResult> out;
    for (std::size_t k = 0; k < (std::size_t{1} << width); ++k) {
        out.push_back(run_branch(config, branch_bits(k, width), options));
    }
    return out;
}

std::vector<ProtocolResult> run_all(const ProtocolConfig& config, const RunOptions& options) {
    config.validate();
    const std::size_t width = outcome_layout(config).total();
    const auto count = static_cast<std::ptrdiff_t>(std::size_t{1} << width);
    std::vector<std::optional<ProtocolResult>> slots(static_cast<std::size_t>(count));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (count >= 16)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        try {
            slots[static_cast<std::size_t>(k)] =
                run_branch(config, branch_bits(static_cast<std::size_t>(k), width), options);
        } catch (...) {
#pragma omp critical(rio_run_all_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<ProtocolResult> out;
    out.reserve(slots.size());
    for (auto& r : slots) out.push_back(std::move(*r));
    return out;
}

}  // namespace rio::protocol
