// Batch sweeps: grid expansion, parallel execution and JSON/CSV emission.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "hypercong/error.hpp"
#include "hypercong/padic.hpp"
#include "hypercong/series.hpp"
#include "hypercong/verify.hpp"

namespace hypercong {

/// All primes <= limit, ascending (sieve of Eratosthenes).
inline std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) {
        return out;
    }
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

struct IntRange {
    long lo = 0;
    long hi = 0;

    /// "A..B" or a single integer "A".
    static IntRange parse(std::string_view text) {
        const auto dots = text.find("..");
        try {
            if (dots == std::string_view::npos) {
                const long v = std::stol(std::string(text));
                return {v, v};
            }
            return {std::stol(std::string(text.substr(0, dots))), std::stol(std::string(text.substr(dots + 2)))};
        } catch (const std::exception&) {
            throw ConfigError("bad range '" + std::string(text) + "'");
        }
    }

    std::string str() const { return std::to_string(lo) + ".." + std::to_string(hi); }
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

enum class OutputFormat { json, csv };

inline const std::vector<std::string>& registered_checks() {
    static const std::vector<std::string> ids{"theorem1", "theorem2", "guo",   "sun-e",     "sun-bernoulli",
                                              "dflst",    "lemmas",   "taylor", "identities"};
    return ids;
}

struct SweepSpec {
    std::vector<std::string> checks{"theorem1"};
    IntRange n{3, 8};
    IntRange q{1, 4};
    IntRange d{4, 8};
    long p_max = 97;
    bool exploratory = false;
    unsigned parallelism = 1;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> output_path;
    std::uint64_t morita_cap = kDefaultMoritaCap;

    void validate() const {
        if (checks.empty()) {
            throw ConfigError("no checks requested");
        }
        for (const auto& c : checks) {
            const auto& ids = registered_checks();
            if (std::find(ids.begin(), ids.end(), c) == ids.end()) {
                throw ConfigError("unknown check id '" + c + "'");
            }
        }
        if (p_max < 5) {
            throw ConfigError("p_max must be >= 5");
        }
        for (const auto* r : {&n, &q, &d}) {
            if (r->lo > r->hi) {
                throw ConfigError("empty range " + r->str());
            }
        }
        if (parallelism == 0) {
            throw ConfigError("parallelism must be positive");
        }
    }
};

/// One (check, parameter tuple) pair of a sweep.
struct WorkUnit {
    std::string check;
    long n = 0;
    long q = 0;
    long d = 0;
    std::uint64_t p = 0;
};

/// Expands the grid of every requested check. Asserted sweeps keep only
/// tuples inside each check's hypotheses; exploratory sweeps also keep
/// tuples with p > n that violate parity or range, which are then tagged.
inline std::vector<WorkUnit> expand_grid(const SweepSpec& spec) {
    spec.validate();
    const auto primes = primes_upto(static_cast<std::uint64_t>(spec.p_max));
    std::vector<WorkUnit> units;
    for (const auto& check : spec.checks) {
        if (check == "sun-e") {
            for (const auto p : primes) {
                if (p >= 5) {
                    units.push_back({check, 0, 0, 0, p});
                }
            }
        } else if (check == "sun-bernoulli") {
            for (long n = std::max(1L, spec.n.lo); n <= spec.n.hi; ++n) {
                for (const auto p : primes) {
                    if (p >= 5 && n % static_cast<long>(p) != 0) {
                        units.push_back({check, n, 0, 0, p});
                    }
                }
            }
        } else if (check == "dflst") {
            for (long n = std::max(3L, spec.n.lo); n <= spec.n.hi; ++n) {
                for (const auto p : primes) {
                    if (p % static_cast<std::uint64_t>(n) == 1) {
                        units.push_back({check, n, 0, 0, p});
                    }
                }
            }
        } else if (check == "guo") {
            for (long d = std::max(3L, spec.d.lo); d <= spec.d.hi; ++d) {
                if (!spec.exploratory && (d % 2 != 0 || d < 4)) {
                    continue;
                }
                for (const auto p : primes) {
                    if ((p + 1) % static_cast<std::uint64_t>(d) == 0) {
                        units.push_back({check, 0, 0, d, p});
                    }
                }
            }
        } else {
            for (long n = std::max(3L, spec.n.lo); n <= spec.n.hi; ++n) {
                for (long q = std::max(1L, spec.q.lo); q <= spec.q.hi; ++q) {
                    for (const auto p : primes) {
                        const TheoremParams tp{n, q, p};
                        const bool inside = !hypothesis_violation(tp).has_value();
                        if (inside || (spec.exploratory && tp.pl() > n)) {
                            units.push_back({check, n, q, 0, p});
                        }
                    }
                }
            }
        }
    }
    if (units.empty()) {
        throw ConfigError("parameter grid is empty");
    }
    return units;
}

inline std::vector<CongruenceReport> run_unit(const WorkUnit& u, const SweepSpec& spec) {
    const Mode mode = spec.exploratory ? Mode::exploratory : Mode::asserted;
    const TheoremParams tp{u.n, u.q, u.p};
    if (u.check == "theorem1") {
        return {verify_theorem1(tp, mode)};
    }
    if (u.check == "theorem2") {
        return {verify_theorem2(tp, mode)};
    }
    if (u.check == "lemmas") {
        return verify_lemma_suite(tp, mode);
    }
    if (u.check == "taylor") {
        return verify_taylor(tp, mode);
    }
    if (u.check == "identities") {
        return verify_exact_identities(tp, mode);
    }
    if (u.check == "guo") {
        auto [a, b] = verify_guo(u.d, u.p, mode);
        return {std::move(a), std::move(b)};
    }
    if (u.check == "sun-e") {
        return {verify_sun_e(u.p)};
    }
    if (u.check == "sun-bernoulli") {
        return {verify_sun_bernoulli(u.p, u.n)};
    }
    if (u.check == "dflst") {
        const ReportParams params{u.n, std::nullopt, std::nullopt, u.p};
        const BigInt cube = BigInt(static_cast<unsigned long>(u.p)) * u.p * u.p;
        if (cube > BigInt(static_cast<unsigned long>(spec.morita_cap))) {
            const std::string why = "p^3 above Morita cap " + std::to_string(spec.morita_cap);
            return {detail::skipped("dflst.first", params, 3, why), detail::skipped("dflst.dual", params, 3, why)};
        }
        auto [a, b] = verify_dflst_pair(u.n, u.p, spec.morita_cap);
        return {std::move(a), std::move(b)};
    }
    throw ConfigError("unknown check id '" + u.check + "'");
}

struct SweepSummary {
    std::size_t total = 0;
    std::map<Verdict, std::size_t> counts;

    std::size_t count(Verdict v) const {
        const auto it = counts.find(v);
        return it == counts.end() ? 0 : it->second;
    }
};

struct SweepResult {
    SweepSpec spec;
    std::vector<CongruenceReport> reports;
    SweepSummary summary;

    /// 0 when no asserted check failed, 1 otherwise.
    int exit_status() const {
        return count_if(reports.begin(), reports.end(), [](const auto& r) { return r.asserted_failure(); }) == 0 ? 0
                                                                                                              : 1;
    }
};

namespace detail {
inline auto sort_key(const CongruenceReport& r) {
    return std::make_tuple(std::cref(r.check_id), r.params.n.value_or(-1), r.params.q.value_or(-1),
                           r.params.d.value_or(-1), r.params.p);
}
}  // namespace detail

inline SweepResult run_sweep(const SweepSpec& spec) {
    const auto units = expand_grid(spec);
    std::vector<std::vector<CongruenceReport>> slots(units.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next++; i < units.size(); i = next++) {
            try {
                slots[i] = run_unit(units[i], spec);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = units.size();
            }
        }
    };
    const auto threads = std::min<std::size_t>(spec.parallelism, units.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SweepResult result;
    result.spec = spec;
    for (auto& slot : slots) {
        for (auto& r : slot) {
            result.reports.push_back(std::move(r));
        }
    }
    std::stable_sort(result.reports.begin(), result.reports.end(),
                     [](const auto& a, const auto& b) { return detail::sort_key(a) < detail::sort_key(b); });
    result.summary.total = result.reports.size();
    for (const auto& r : result.reports) {
        ++result.summary.counts[r.verdict];
    }
    return result;
}

// ---------------------------------------------------------------------------
// Serialization

using ordered_json = nlohmann::ordered_json;

inline ordered_json valuation_json(const Valuation& v) {
    if (v.is_infinite()) {
        return "inf";
    }
    return v.value();
}

inline ordered_json to_json(const CongruenceReport& r) {
    ordered_json params = ordered_json::object();
    if (r.params.n) {
        params["n"] = *r.params.n;
    }
    if (r.params.q) {
        params["q"] = *r.params.q;
    }
    if (r.params.d) {
        params["d"] = *r.params.d;
    }
    params["p"] = r.params.p;
    ordered_json j;
    j["check_id"] = r.check_id;
    j["params"] = std::move(params);
    j["required_ord"] = valuation_json(r.required_ord);
    j["achieved_ord"] = r.achieved_ord ? valuation_json(*r.achieved_ord) : ordered_json(nullptr);
    if (r.residue) {
        j["residue"] = r.residue->str();
        j["residue_modulus"] = r.residue->modulus.value().get_str();
    } else {
        j["residue"] = nullptr;
        j["residue_modulus"] = nullptr;
    }
    j["verdict"] = to_string(r.verdict);
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

/// The spec as echoed into output. Parallelism and the output path are
/// omitted so that the file content does not depend on how it was produced.
inline ordered_json to_json(const SweepSpec& spec) {
    ordered_json j;
    j["checks"] = spec.checks;
    j["n"] = spec.n.str();
    j["q"] = spec.q.str();
    j["d"] = spec.d.str();
    j["p_max"] = spec.p_max;
    j["exploratory"] = spec.exploratory;
    j["morita_cap"] = spec.morita_cap;
    return j;
}

inline ordered_json to_json(const SweepSummary& s) {
    ordered_json j;
    j["total"] = s.total;
    for (const auto v : {Verdict::holds, Verdict::fails, Verdict::ill_posed, Verdict::hypothesis_violated,
                         Verdict::skipped}) {
        j[to_string(v)] = s.count(v);
    }
    return j;
}

inline std::string render_json(const SweepResult& result) {
    ordered_json j;
    j["spec"] = to_json(result.spec);
    ordered_json reports = ordered_json::array();
    for (const auto& r : result.reports) {
        reports.push_back(to_json(r));
    }
    j["reports"] = std::move(reports);
    j["summary"] = to_json(result.summary);
    return j.dump(2) + "\n";
}

inline std::string render_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "check_id,n,q,d,p,required_ord,achieved_ord,residue,verdict\n";
    const auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& r : result.reports) {
        out << r.check_id << ',' << opt(r.params.n) << ',' << opt(r.params.q) << ',' << opt(r.params.d) << ','
            << r.params.p << ',' << r.required_ord.str() << ',' << (r.achieved_ord ? r.achieved_ord->str() : "")
            << ',' << (r.residue ? r.residue->str() : "") << ',' << to_string(r.verdict) << '\n';
    }
    return out.str();
}

inline std::string render(const SweepResult& result) {
    return result.spec.format == OutputFormat::json ? render_json(result) : render_csv(result);
}

// ---------------------------------------------------------------------------
// Config files

inline OutputFormat parse_format(std::string_view text) {
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "csv") {
        return OutputFormat::csv;
    }
    throw ConfigError("unknown format '" + std::string(text) + "'");
}

inline std::vector<std::string> split_checks(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (!piece.empty()) {
            out.emplace_back(piece);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

/// Applies the keys of a JSON config object on top of `spec`. Recognized
/// keys: checks, n, q, d, p_max, exploratory, parallel, format, out.
inline void apply_config(SweepSpec& spec, const nlohmann::json& config) {
    if (!config.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    const auto range = [](const nlohmann::json& v) {
        if (v.is_string()) {
            return IntRange::parse(v.get<std::string>());
        }
        if (v.is_number_integer()) {
            return IntRange{v.get<long>(), v.get<long>()};
        }
        if (v.is_array() && v.size() == 2) {
            return IntRange{v[0].get<long>(), v[1].get<long>()};
        }
        throw ConfigError("bad range in config: " + v.dump());
    };
    try {
        for (const auto& [key, value] : config.items()) {
            if (key == "checks") {
                spec.checks = value.is_string() ? split_checks(value.get<std::string>())
                                                : value.get<std::vector<std::string>>();
            } else if (key == "n") {
                spec.n = range(value);
            } else if (key == "q") {
                spec.q = range(value);
            } else if (key == "d") {
                spec.d = range(value);
            } else if (key == "p_max") {
                spec.p_max = value.get<long>();
            } else if (key == "exploratory") {
                spec.exploratory = value.get<bool>();
            } else if (key == "parallel") {
                spec.parallelism = value.get<unsigned>();
            } else if (key == "format") {
                spec.format = parse_format(value.get<std::string>());
            } else if (key == "out") {
                spec.output_path = value.get<std::string>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace hypercong
