#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rio/cli.hpp"
#include "rio/restricted.hpp"

namespace rio::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::uint64_t to_u64(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("not an unsigned integer: '" + s + "'");
    }
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw UsageError("integer out of range: '" + s + "'");
    }
}

Complex to_complex(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() == 1) return {to_double(parts[0]), 0.0};
    if (parts.size() == 2) return {to_double(parts[0]), to_double(parts[1])};
    throw UsageError("complex entries are 're' or 're,im', got '" + s + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void expect_count(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw UsageError(std::string(what) + " needs " + std::to_string(want) + " entries, got " +
                         std::to_string(got));
    }
}

}  // namespace

std::vector<Complex> parse_phases(const std::string& raw, std::size_t count) {
    const std::string text = trim(raw);
    if (starts_with(text, "file:")) return parse_phases(read_file(text.substr(5)), count);
    if (starts_with(text, "seed:")) return random_unit_phases(count, to_u64(text.substr(5)));
    std::vector<Complex> out;
    if (starts_with(text, "complex:")) {
        for (const auto& e : split(text.substr(8), ';')) out.push_back(to_complex(e));
    } else {
        const std::string body = starts_with(text, "angles:") ? text.substr(7) : text;
        for (const auto& e : split(body, ',')) out.push_back(std::polar(1.0, to_double(e)));
    }
    expect_count(out.size(), count, "phases");
    for (const auto& t : out) {
        if (std::abs(t) == 0.0) throw UsageError("phases must be nonzero");
    }
    return out;
}

std::vector<Complex> parse_state(const std::string& raw, std::size_t count) {
    const std::string text = trim(raw);
    if (starts_with(text, "seed:")) {
        const auto labels = numbered_labels('Y', 1, static_cast<std::size_t>(std::countr_zero(count)));
        const auto psi = make_random_state(SpaceStructure(labels), to_u64(text.substr(5)));
        return {psi.amplitudes().begin(), psi.amplitudes().end()};
    }
    std::vector<Complex> out;
    for (const auto& e : split(text, ';')) out.push_back(to_complex(e));
    expect_count(out.size(), count, "state");
    double norm = 0.0;
    for (const auto& a : out) norm += std::norm(a);
    if (std::abs(norm - 1.0) > kFactorTolerance) {
        throw UsageError("state amplitudes must be normalized (norm^2 = " + std::to_string(norm) + ")");
    }
    return out;
}

OutcomeRequest parse_outcomes(const std::string& raw) {
    const std::string text = trim(raw);
    OutcomeRequest req;
    if (text == "all") return req;
    if (starts_with(text, "seed:")) {
        req.kind = OutcomeRequest::Kind::Seed;
        req.seed = to_u64(text.substr(5));
        return req;
    }
    if (starts_with(text, "bits:")) {
        req.kind = OutcomeRequest::Kind::Bits;
        for (char ch : text.substr(5)) {
            if (ch == ',' || ch == ' ') continue;
            if (ch != '0' && ch != '1') throw UsageError("outcome bits must be 0/1");
            req.bits.push_back(ch - '0');
        }
        return req;
    }
    throw UsageError("--outcomes takes all, bits:..., or seed:K");
}

protocol::Roles parse_roles(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw UsageError("--roles takes controller,sender,receiver");
    const auto party = [](const std::string& name) {
        for (auto p : {protocol::Party::Alice, protocol::Party::Bob, protocol::Party::Charlie}) {
            if (protocol::to_string(p) == name) return p;
        }
        throw UsageError("unknown party '" + name + "'");
    };
    return {party(parts[0]), party(parts[1]), party(parts[2])};
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("RIO_SEED");
    if (!v || !*v) return std::nullopt;
    return to_u64(v);
}

}  // namespace rio::cli
