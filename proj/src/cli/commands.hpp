#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rio/cli.hpp"

namespace rio::cli::detail {

struct RunFlags {
    std::string family;
    std::optional<std::size_t> n_qubits;
    std::optional<std::size_t> controllers;
    int variant = 1;
    std::uint64_t x = 1;
    std::uint64_t y = 1;
    std::string phases;
    std::string phases2;
    std::string state;
    std::string outcomes = "all";
    std::string roles;
    std::optional<std::uint64_t> seed;
    bool skip_startup = false;
    bool withhold_password = false;
    bool literal_schedule = false;
    bool timing = false;
};

struct SweepFlags {
    RunFlags base;
    bool all_x = false;
    std::size_t sample_x = 0;
    std::size_t trials = 1;
    bool all_variants = false;
};

/// --seed, else RIO_SEED, else 0.
std::uint64_t resolve_seed(const RunFlags& flags);
/// Config from flags; phases and state default to draws from the seed.
protocol::ProtocolConfig build_config(const RunFlags& flags, std::uint64_t seed);

int cmd_sweep(const SweepFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace rio::cli::detail
