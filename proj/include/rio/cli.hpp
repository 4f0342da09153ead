#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rio/protocol.hpp"

namespace rio::cli {

inline constexpr const char* kToolName = "rio";
inline constexpr const char* kToolVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Entry point behind the `rio` binary; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.1,0.2" or "angles:..." (t = e^{i phi}), "complex:re,im;re,im",
/// "seed:K", or "file:PATH" holding any of those.
std::vector<Complex> parse_phases(const std::string& text, std::size_t count);
/// "seed:K" or inline amplitudes "re,im;re,im" (a bare "re" is real).
std::vector<Complex> parse_state(const std::string& text, std::size_t count);

struct OutcomeRequest {
    enum class Kind { All, Bits, Seed };
    Kind kind = Kind::All;
    std::vector<int> bits;
    std::uint64_t seed = 0;
};
/// "all", "bits:0110" (a's, then b's, then c's) or "seed:K".
OutcomeRequest parse_outcomes(const std::string& text);
/// "Charlie,Alice,Bob" = controller, sender, receiver.
protocol::Roles parse_roles(const std::string& text);
/// RIO_SEED, when set to an unsigned integer.
std::optional<std::uint64_t> env_seed();

}  // namespace rio::cli
