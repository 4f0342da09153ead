#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include <omp.h>

#include "commands.hpp"
#include "rio/restricted.hpp"

namespace rio::cli::detail {

namespace {

struct Job {
    int variant;
    std::uint64_t x;
    std::uint64_t y;
    std::size_t trial;
};

std::string bits_string(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s.push_back(static_cast<char>('0' + b));
    return s;
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace

int cmd_sweep(const SweepFlags& flags, std::ostream& out, std::ostream& err) {
    const std::uint64_t seed = resolve_seed(flags.base);
    // Validates family/N/n once before fanning out.
    const auto probe = build_config(flags.base, seed);
    const bool combined = protocol::is_combined(probe.family);
    const std::uint64_t count = set_count(probe.N);
    if (flags.all_x && flags.sample_x > 0) throw UsageError("--all-x and --sample-x are exclusive");
    if (flags.all_x && probe.N > 2) throw UsageError("--all-x is limited to N <= 2; use --sample-x");

    std::vector<std::pair<std::uint64_t, std::uint64_t>> ops;
    if (flags.all_x) {
        for (std::uint64_t x = 1; x <= count; ++x) {
            if (!combined) {
                ops.emplace_back(x, 0);
                continue;
            }
            for (std::uint64_t y = 1; y <= count; ++y) ops.emplace_back(x, y);
        }
    } else if (flags.sample_x > 0) {
        std::mt19937_64 rng(protocol::mix_seed(seed, 0x5A3B1E));
        std::uniform_int_distribution<std::uint64_t> pick(1, count);
        for (std::size_t k = 0; k < flags.sample_x; ++k) {
            const std::uint64_t x = pick(rng);
            ops.emplace_back(x, combined ? pick(rng) : 0);
        }
    } else {
        ops.emplace_back(flags.base.x, combined ? flags.base.y : 0);
    }

    std::vector<int> variants{flags.base.variant};
    if (flags.all_variants) {
        if (!protocol::is_controlled(probe.family)) {
            throw UsageError("--all-variants needs a controlled family");
        }
        variants = {1, 2, 3, 4};
    }

    std::vector<Job> jobs;
    for (int v : variants) {
        for (const auto& [x, y] : ops) {
            for (std::size_t t = 0; t < flags.trials; ++t) jobs.push_back({v, x, y, t});
        }
    }

    std::vector<std::string> chunks(jobs.size());
    std::vector<int> failed(jobs.size(), 0);
    std::exception_ptr failure;
    const auto njobs = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < njobs; ++j) {
        try {
            const Job& job = jobs[static_cast<std::size_t>(j)];
            RunFlags f = flags.base;
            f.variant = job.variant;
            f.x = job.x;
            if (combined) f.y = job.y;
            std::uint64_t s = protocol::mix_seed(seed, static_cast<std::uint64_t>(job.variant));
            s = protocol::mix_seed(s, job.x);
            s = protocol::mix_seed(s, job.y);
            s = protocol::mix_seed(s, job.trial);
            const auto cfg = build_config(f, s);
            std::ostringstream rows;
            std::size_t branch = 0;
            for (const auto& r : protocol::run_all_serial(cfg)) {
                const bool ok = r.fidelity >= 1.0 - kFidelityTolerance &&
                                protocol::audit_bits(r.transcript, cfg).pass;
                failed[static_cast<std::size_t>(j)] |= ok ? 0 : 1;
                rows << protocol::to_string(cfg.family) << ',' << cfg.N << ',' << cfg.n << ','
                     << cfg.variant << ',' << cfg.first.x << ','
                     << (combined ? std::to_string(cfg.second.x) : "") << ',' << job.trial << ','
                     << branch++ << ',' << bits_string(r.outcomes.at('a')) << ','
                     << bits_string(r.outcomes.at('b')) << ',' << bits_string(r.outcomes.at('c'))
                     << ',' << number(r.branch_probability) << ',' << number(r.fidelity) << ','
                     << (r.substitutions.empty() ? 0 : 1) << ',' << (ok ? "pass" : "fail") << '\n';
            }
            chunks[static_cast<std::size_t>(j)] = rows.str();
        } catch (...) {
#pragma omp critical(rio_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    out << "family,N,n,variant,x,y,trial,branch,a,b,c,probability,fidelity,substituted,status\n";
    std::size_t bad = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        out << chunks[j];
        bad += static_cast<std::size_t>(failed[j]);
    }
    if (bad) err << "rio: " << bad << " of " << jobs.size() << " configurations failed\n";
    return bad ? kExitContract : kExitOk;
}

}  // namespace rio::cli::detail
