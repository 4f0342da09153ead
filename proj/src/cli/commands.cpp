#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "rio/recovery2.hpp"

namespace rio::cli {

namespace detail {

std::uint64_t resolve_seed(const RunFlags& flags) {
    if (flags.seed) return *flags.seed;
    if (auto s = env_seed()) return *s;
    return 0;
}

protocol::ProtocolConfig build_config(const RunFlags& flags, std::uint64_t seed) {
    using protocol::Family;
    protocol::ProtocolConfig cfg;
    try {
        cfg.family = protocol::family_from_string(flags.family);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const bool one_qubit = cfg.family == Family::Controlled1Q || cfg.family == Family::Combined1Q;
    cfg.N = flags.n_qubits.value_or(one_qubit ? 1 : 2);
    if (one_qubit && cfg.N != 1) throw UsageError("one-qubit families take --n-qubits 1");
    if (cfg.N < 1 || cfg.N > protocol::kMaxProtocolQubits) {
        throw UsageError("--n-qubits must be 1.." + std::to_string(protocol::kMaxProtocolQubits));
    }
    switch (cfg.family) {
        case Family::Controlled1Q: cfg.n = flags.controllers.value_or(1); break;
        case Family::ControlledNQ: cfg.n = flags.controllers.value_or(cfg.N); break;
        default:
            if (flags.controllers && *flags.controllers != 0) {
                throw UsageError("--controllers applies to controlled families only");
            }
            cfg.n = 0;
    }
    cfg.variant = flags.variant;
    cfg.first.x = flags.x;
    cfg.second.x = flags.y;
    if (!flags.roles.empty()) cfg.roles = parse_roles(flags.roles);
    cfg.skip_startup = flags.skip_startup;
    cfg.withhold_password = flags.withhold_password;
    cfg.literal_schedule = flags.literal_schedule;

    protocol::randomize(cfg, seed);
    const std::size_t dim = std::size_t{1} << cfg.N;
    if (!flags.phases.empty()) cfg.first.phases = parse_phases(flags.phases, dim);
    if (!flags.phases2.empty()) {
        if (!protocol::is_combined(cfg.family)) throw UsageError("--phases2 needs a combined family");
        cfg.second.phases = parse_phases(flags.phases2, dim);
    }
    if (!flags.state.empty()) cfg.unknown_state = parse_state(flags.state, dim);
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

}  // namespace detail

namespace {

using detail::RunFlags;
using nlohmann::ordered_json;

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--family", f.family, "controlled1q | combined1q | controlled-nq | combined-nq")
        ->required()
        ->check(CLI::IsMember({"controlled1q", "combined1q", "controlled-nq", "combined-nq"}));
    cmd->add_option("--n-qubits", f.n_qubits, "qubits per operator (N <= 4)");
    cmd->add_option("--controllers", f.controllers, "controller count n (controlled-nq)");
    cmd->add_option("--variant", f.variant, "password routing 1..4")->check(CLI::Range(1, 4));
    cmd->add_option("--x", f.x, "restricted-set index of the (first) operator");
    cmd->add_option("--y", f.y, "restricted-set index of the second operator");
    cmd->add_option("--phases", f.phases, "angles (default), complex:re,im;..., seed:K, file:PATH");
    cmd->add_option("--phases2", f.phases2, "phases of the second operator");
    cmd->add_option("--state", f.state, "seed:K or amplitudes re,im;re,im;...");
    cmd->add_option("--roles", f.roles, "controller,sender,receiver (controlled families)");
    cmd->add_option("--seed", f.seed, "seed for defaulted phases/state (falls back to RIO_SEED)");
    cmd->add_flag("--skip-startup", f.skip_startup, "negative control: controller stays idle");
    cmd->add_flag("--withhold-password", f.withhold_password,
                  "negative control: the password never arrives");
    cmd->add_flag("--literal-schedule", f.literal_schedule,
                  "two-sender families: run the literal step list");
}

struct Aggregate {
    std::size_t branches = 0;
    double min_fidelity = 1.0;
    double mean_fidelity = 0.0;
    double probability_sum = 0.0;
    bool fidelity_pass = true;
    bool audit_pass = true;
};

ordered_json aggregate_json(const Aggregate& a) {
    return {{"branches", a.branches},
            {"min_fidelity", a.min_fidelity},
            {"mean_fidelity", a.mean_fidelity},
            {"probability_sum", a.probability_sum},
            {"fidelity_pass", a.fidelity_pass},
            {"audit_pass", a.audit_pass}};
}

std::vector<protocol::ProtocolResult> execute(const protocol::ProtocolConfig& cfg,
                                              const OutcomeRequest& req) {
    switch (req.kind) {
        case OutcomeRequest::Kind::All: return protocol::run_all(cfg);
        case OutcomeRequest::Kind::Bits:
            try {
                return {protocol::run_branch(cfg, req.bits)};
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        case OutcomeRequest::Kind::Seed: return {protocol::run_sampled(cfg, req.seed)};
    }
    return {};
}

int cmd_run(const RunFlags& flags, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = detail::resolve_seed(flags);
    const auto cfg = detail::build_config(flags, seed);
    const auto req = parse_outcomes(flags.outcomes);
    const auto results = execute(cfg, req);

    Aggregate agg;
    ordered_json branches = ordered_json::array();
    std::optional<protocol::AuditReport> first_failed_audit;
    for (const auto& r : results) {
        const auto audit = protocol::audit_bits(r.transcript, cfg);
        if (!audit.pass && !first_failed_audit) first_failed_audit = audit;
        agg.audit_pass = agg.audit_pass && audit.pass;
        agg.fidelity_pass = agg.fidelity_pass && r.fidelity >= 1.0 - kFidelityTolerance;
        agg.min_fidelity = std::min(agg.min_fidelity, r.fidelity);
        agg.mean_fidelity += r.fidelity;
        agg.probability_sum += r.branch_probability;
        branches.push_back(protocol::to_json(r));
    }
    agg.branches = results.size();
    if (agg.branches) agg.mean_fidelity /= static_cast<double>(agg.branches);
    const auto audit = first_failed_audit
                           ? *first_failed_audit
                           : protocol::audit_bits(results.front().transcript, cfg);

    ordered_json report{{"tool", kToolName}, {"version", kToolVersion}, {"command", "run"}};
    report["seed"] = seed;
    report["outcomes"] = flags.outcomes;
    report["config"] = protocol::to_json(cfg);
    report["branches"] = branches;
    report["aggregate"] = aggregate_json(agg);
    report["audit"] = protocol::to_json(audit);
    if (flags.timing) {
        report["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    out << report.dump(2) << "\n";
    return agg.fidelity_pass && agg.audit_pass ? kExitOk : kExitContract;
}

int cmd_verify_catalog(bool strict, std::ostream& out) {
    const auto rep = verify_catalog();
    auto j = to_json(rep);
    j["strict_index"] = strict;
    out << j.dump(2) << "\n";
    const bool ok = rep.set_equal && rep.pairwise_distinct && (!strict || rep.all_index_match);
    return ok ? kExitOk : kExitContract;
}

protocol::Party party_from(const std::string& name) {
    for (auto p : {protocol::Party::Alice, protocol::Party::Bob, protocol::Party::Charlie}) {
        if (protocol::to_string(p) == name) return p;
    }
    throw UsageError("unknown party '" + name + "' in report");
}

void print_audit_table(const protocol::AuditReport& rep, std::ostream& out) {
    out << std::left << std::setw(6) << "step" << std::setw(10) << "from" << std::setw(10) << "to"
        << std::setw(10) << "tag" << std::setw(8) << "bits" << std::setw(10) << "declared"
        << "status\n";
    std::size_t step = 0;
    for (const auto& row : rep.rows) {
        ++step;
        const auto& src = row.actual;
        out << std::setw(6) << step << std::setw(10)
            << (src ? protocol::to_string(src->from) : "-") << std::setw(10)
            << (src ? protocol::to_string(src->to) : "-") << std::setw(10)
            << (src ? src->tag : row.expected->tag) << std::setw(8)
            << (src ? std::to_string(src->bits.size()) : "-") << std::setw(10)
            << (row.expected ? std::to_string(row.expected->width) : "-")
            << (row.ok ? "ok" : "FAIL") << "\n";
    }
}

int finish_audit(const std::vector<protocol::AuditReport>& audits, bool as_json, std::ostream& out) {
    bool pass = true;
    std::size_t failing = 0;
    for (const auto& a : audits) {
        pass = pass && a.pass;
        failing += a.pass ? 0 : 1;
    }
    const auto& shown = [&]() -> const protocol::AuditReport& {
        for (const auto& a : audits) {
            if (!a.pass) return a;
        }
        return audits.front();
    }();
    if (as_json) {
        ordered_json j{{"tool", kToolName}, {"command", "audit"}, {"branches", audits.size()},
                       {"failing_branches", failing}, {"pass", pass}};
        j["table"] = protocol::to_json(shown);
        out << j.dump(2) << "\n";
    } else {
        print_audit_table(shown, out);
        out << "branches audited: " << audits.size() << ", failing: " << failing << "\n";
        if (!shown.failure.empty()) out << "first failure: " << shown.failure << "\n";
        out << "audit: " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitContract;
}

int cmd_audit_report(const std::string& path, bool as_json, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open report '" + path + "'");
    ordered_json rep;
    try {
        rep = ordered_json::parse(in);
        const auto& c = rep.at("config");
        protocol::ProtocolConfig cfg;
        cfg.family = protocol::family_from_string(c.at("family").get<std::string>());
        cfg.N = c.at("N").get<std::size_t>();
        cfg.n = c.at("n").get<std::size_t>();
        cfg.variant = c.at("variant").get<int>();
        cfg.literal_schedule = c.value("literal_schedule", false);
        if (c.contains("roles")) {
            cfg.roles = {party_from(c["roles"].at("controller").get<std::string>()),
                         party_from(c["roles"].at("sender").get<std::string>()),
                         party_from(c["roles"].at("receiver").get<std::string>())};
        }
        std::vector<protocol::AuditReport> audits;
        for (const auto& b : rep.at("branches")) {
            std::vector<protocol::Message> msgs;
            for (const auto& m : b.at("messages")) {
                msgs.push_back({party_from(m.at("from").get<std::string>()),
                                party_from(m.at("to").get<std::string>()),
                                m.at("tag").get<std::string>(), m.at("bits").get<std::vector<int>>()});
            }
            audits.push_back(protocol::audit_bits(msgs, cfg));
        }
        if (audits.empty()) throw UsageError("report has no branches");
        return finish_audit(audits, as_json, out);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed report: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("malformed report: ") + e.what());
    }
}

int cmd_audit_live(const RunFlags& flags, bool as_json, std::ostream& out) {
    const auto cfg = detail::build_config(flags, detail::resolve_seed(flags));
    std::vector<protocol::AuditReport> audits;
    for (const auto& r : execute(cfg, parse_outcomes(flags.outcomes))) {
        audits.push_back(protocol::audit_bits(r.transcript, cfg));
    }
    return finish_audit(audits, as_json, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Remote implementation of restricted-set quantum operations over GHZ/Bell channels",
                 kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "run one protocol configuration and print a JSON report");
    add_run_flags(run, run_flags);
    run->add_option("--outcomes", run_flags.outcomes, "all | bits:<a..b..c..> | seed:K");
    run->add_flag("--json", "JSON report on stdout (the only format)");
    run->add_flag("--timing", run_flags.timing, "include wall_time_s in the report");

    bool strict = false;
    auto* verify = app.add_subcommand("verify-catalog", "check the two-qubit recovery catalog");
    verify->add_flag("--strict-index", strict, "require catalog x == lexicographic x");

    detail::SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "enumerate branches over many configurations (CSV)");
    add_run_flags(sweep, sweep_flags.base);
    sweep->add_flag("--all-x", sweep_flags.all_x, "every x (and y) at N <= 2");
    sweep->add_option("--sample-x", sweep_flags.sample_x, "K sampled x (and y) values");
    sweep->add_option("--trials", sweep_flags.trials, "random phase/state trials per x")
        ->check(CLI::PositiveNumber);
    sweep->add_flag("--all-variants", sweep_flags.all_variants, "variants 1..4");

    RunFlags audit_flags;
    std::string report_path;
    bool audit_json = false;
    auto* audit = app.add_subcommand("audit", "check message widths of a stored report or a live run");
    audit->add_option("--report", report_path, "RunReport JSON written by `run`");
    audit->add_option("--family", audit_flags.family, "live run: family");
    audit->add_option("--n-qubits", audit_flags.n_qubits, "live run: N");
    audit->add_option("--controllers", audit_flags.controllers, "live run: n");
    audit->add_option("--variant", audit_flags.variant, "live run: variant")->check(CLI::Range(1, 4));
    audit->add_option("--x", audit_flags.x, "live run: x");
    audit->add_option("--y", audit_flags.y, "live run: y");
    audit->add_option("--roles", audit_flags.roles, "live run: roles");
    audit->add_option("--seed", audit_flags.seed, "live run: seed");
    audit->add_option("--outcomes", audit_flags.outcomes, "live run: outcomes");
    audit->add_flag("--literal-schedule", audit_flags.literal_schedule, "live run: literal schedule");
    audit->add_flag("--withhold-password", audit_flags.withhold_password, "live run: no password");
    audit->add_flag("--json", audit_json, "JSON instead of a table");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "rio: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_flags, out);
        if (*verify) return cmd_verify_catalog(strict, out);
        if (*sweep) return detail::cmd_sweep(sweep_flags, out, err);
        if (*audit) {
            if (!report_path.empty()) {
                if (!audit_flags.family.empty()) throw UsageError("give --report or --family, not both");
                return cmd_audit_report(report_path, audit_json, out);
            }
            if (audit_flags.family.empty()) throw UsageError("audit needs --report FILE or --family");
            return cmd_audit_live(audit_flags, audit_json, out);
        }
    } catch (const UsageError& e) {
        err << "rio: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "rio: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "rio: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "rio: contract failure: " << e.what() << "\n";
        return kExitContract;
    }
    return kExitUsage;
}

}  // namespace rio::cli
