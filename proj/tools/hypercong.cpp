// hypercong: command-line driver for the congruence checks.
//
//   hypercong primes LIMIT
//   hypercong verify CHECK --n N --q Q --d D --p P [--exploratory]
//   hypercong sweep --checks theorem1,guo --n 3..8 --q 1..4 --p-max 97 ...
//
// Exit codes: 0 no asserted failure, 1 asserted failure, 2 configuration or
// precondition error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypercong/hypercong.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::string describe(const hypercong::CongruenceReport& r) {
    std::ostringstream out;
    out << r.check_id;
    if (r.params.n) {
        out << " n=" << *r.params.n;
    }
    if (r.params.q) {
        out << " q=" << *r.params.q;
    }
    if (r.params.d) {
        out << " d=" << *r.params.d;
    }
    out << " p=" << r.params.p << ": " << hypercong::to_string(r.verdict);
    if (r.achieved_ord) {
        out << " (ord " << r.achieved_ord->str() << ", required " << r.required_ord.str();
        if (r.residue) {
            out << ", residue " << r.residue->str() << " mod " << r.residue->modulus.value().get_str();
        }
        out << ")";
    }
    if (!r.note.empty()) {
        out << " [" << r.note << "]";
    }
    return out.str();
}

struct VerifyArgs {
    std::string check;
    long n = 0;
    long q = 0;
    long d = 0;
    std::uint64_t p = 0;
    bool exploratory = false;
};

int run_verify(const VerifyArgs& a) {
    using namespace hypercong;
    const auto& ids = registered_checks();
    if (std::find(ids.begin(), ids.end(), a.check) == ids.end()) {
        throw ConfigError("unknown check id '" + a.check + "'");
    }
    SweepSpec spec;
    spec.exploratory = a.exploratory;
    spec.morita_cap = morita_cap_from_env();
    const WorkUnit unit{a.check, a.n, a.q, a.d, a.p};
    const auto reports = run_unit(unit, spec);
    bool failed = false;
    for (const auto& r : reports) {
        std::cout << describe(r) << '\n';
        failed = failed || r.asserted_failure();
    }
    return failed ? kExitFailure : kExitPass;
}

struct SweepArgs {
    std::optional<std::string> config;
    std::optional<std::string> checks;
    std::optional<std::string> n;
    std::optional<std::string> q;
    std::optional<std::string> d;
    std::optional<long> p_max;
    bool exploratory = false;
    std::optional<unsigned> parallel;
    std::optional<std::string> format;
    std::optional<std::string> out;
};

int run_sweep_command(const SweepArgs& a) {
    using namespace hypercong;
    SweepSpec spec;
    spec.morita_cap = morita_cap_from_env();
    if (a.config) {
        std::ifstream in(*a.config);
        if (!in) {
            throw ConfigError("cannot read config '" + *a.config + "'");
        }
        nlohmann::json config;
        try {
            in >> config;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config parse: ") + e.what());
        }
        apply_config(spec, config);
    }
    if (a.checks) {
        spec.checks = split_checks(*a.checks);
    }
    if (a.n) {
        spec.n = IntRange::parse(*a.n);
    }
    if (a.q) {
        spec.q = IntRange::parse(*a.q);
    }
    if (a.d) {
        spec.d = IntRange::parse(*a.d);
    }
    if (a.p_max) {
        spec.p_max = *a.p_max;
    }
    if (a.exploratory) {
        spec.exploratory = true;
    }
    if (a.parallel) {
        spec.parallelism = *a.parallel;
    }
    if (a.format) {
        spec.format = parse_format(*a.format);
    }
    if (a.out) {
        spec.output_path = *a.out;
    }

    const auto result = run_sweep(spec);
    const std::string text = render(result);
    if (spec.output_path && *spec.output_path != "-") {
        std::ofstream file(*spec.output_path, std::ios::binary);
        if (!file) {
            throw ConfigError("cannot write '" + *spec.output_path + "'");
        }
        file << text;
    } else {
        std::cout << text;
    }
    const auto& s = result.summary;
    std::cerr << "reports " << s.total << ": holds " << s.count(Verdict::holds) << ", fails "
              << s.count(Verdict::fails) << ", ill_posed " << s.count(Verdict::ill_posed) << ", hypothesis_violated "
              << s.count(Verdict::hypothesis_violated) << ", skipped " << s.count(Verdict::skipped) << '\n';
    return result.exit_status();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of truncated hypergeometric congruences"};
    app.require_subcommand(1);

    std::uint64_t limit = 0;
    auto* primes = app.add_subcommand("primes", "Print all primes up to LIMIT");
    primes->add_option("limit", limit, "Upper bound")->required()->check(CLI::Range(2ULL, 100'000'000ULL));

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run one check on one parameter tuple");
    verify->add_option("check", va.check, "Check id")->required();
    verify->add_option("--n", va.n, "Exponent n");
    verify->add_option("--q", va.q, "Shift q");
    verify->add_option("--d", va.d, "Guo modulus d");
    verify->add_option("--p", va.p, "Prime p")->required();
    verify->add_flag("--exploratory", va.exploratory, "Evaluate outside the hypotheses");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "Run checks over a parameter grid");
    sweep->add_option("--config", sa.config, "JSON config file (flags override it)");
    sweep->add_option("--checks", sa.checks, "Comma-separated check ids");
    sweep->add_option("--n", sa.n, "Range A..B for n");
    sweep->add_option("--q", sa.q, "Range A..B for q");
    sweep->add_option("--d", sa.d, "Range A..B for d");
    sweep->add_option("--p-max", sa.p_max, "Largest prime");
    sweep->add_flag("--exploratory", sa.exploratory, "Include tuples outside the hypotheses");
    sweep->add_option("--parallel", sa.parallel, "Worker threads");
    sweep->add_option("--format", sa.format, "json or csv");
    sweep->add_option("--out", sa.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*primes) {
            for (const auto p : hypercong::primes_upto(limit)) {
                std::cout << p << '\n';
            }
            return kExitPass;
        }
        if (*verify) {
            return run_verify(va);
        }
        return run_sweep_command(sa);
    } catch (const hypercong::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
