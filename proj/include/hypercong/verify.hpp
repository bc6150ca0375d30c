// Congruence checks. Each check evaluates an exact difference, measures its
// p-adic valuation and reduces it modulo the prime power the claim is made at.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercong/combinatorics.hpp"
#include "hypercong/error.hpp"
#include "hypercong/jet.hpp"
#include "hypercong/padic.hpp"
#include "hypercong/rational.hpp"
#include "hypercong/series.hpp"

namespace hypercong {

enum class Verdict { holds, fails, ill_posed, hypothesis_violated, skipped };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::ill_posed: return "ill_posed";
        case Verdict::hypothesis_violated: return "hypothesis_violated";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

/// Asserted checks enforce the parity and range hypotheses; exploratory
/// checks evaluate anyway and tag out-of-hypothesis results.
enum class Mode { asserted, exploratory };

struct ReportParams {
    std::optional<long> n;
    std::optional<long> q;
    std::optional<long> d;
    std::uint64_t p = 0;

    static ReportParams of(const TheoremParams& tp) { return {tp.n, tp.q, std::nullopt, tp.p}; }
    friend bool operator==(const ReportParams&, const ReportParams&) = default;
};

struct CongruenceReport {
    std::string check_id;
    ReportParams params;
    /// +inf for exact identities.
    Valuation required_ord;
    /// Absent only for skipped checks.
    std::optional<Valuation> achieved_ord;
    /// Difference reduced mod p^k (k = required_ord, or 3 for exact
    /// identities); absent when the difference is not p-integral.
    std::optional<Residue> residue;
    Verdict verdict = Verdict::fails;
    std::string note;

    bool asserted_failure() const { return verdict == Verdict::fails || verdict == Verdict::ill_posed; }
};

/// Residue precision used for exact identities.
inline constexpr unsigned kExactResiduePrecision = 3;

namespace detail {

/// Report on a family of differences that must all reach `required`.
/// achieved_ord is the minimum valuation; the residue is taken from the
/// first difference attaining it.
inline CongruenceReport report_on(std::string id, ReportParams params, std::span<const Rational> diffs,
                                  Valuation required) {
    CongruenceReport r;
    r.check_id = std::move(id);
    r.params = params;
    r.required_ord = required;
    const std::uint64_t p = params.p;
    Valuation worst = Valuation::infinity();
    const Rational* witness = nullptr;
    for (const auto& diff : diffs) {
        const Valuation v = ord_rational(diff, p);
        if (witness == nullptr || v < worst) {
            worst = v;
            witness = &diff;
        }
    }
    r.achieved_ord = worst;
    if (worst < Valuation(0)) {
        r.verdict = Verdict::ill_posed;
        return r;
    }
    const unsigned k = required.is_infinite() ? kExactResiduePrecision
                                              : static_cast<unsigned>(std::max(1L, required.value()));
    r.residue = reduce_mod(witness != nullptr ? *witness : Rational(0), PrimePowerModulus(p, k));
    r.verdict = worst >= required ? Verdict::holds : Verdict::fails;
    return r;
}

inline CongruenceReport report_on(std::string id, ReportParams params, const Rational& diff, Valuation required) {
    return report_on(std::move(id), params, std::span<const Rational>(&diff, 1), required);
}

inline CongruenceReport skipped(std::string id, ReportParams params, Valuation required, std::string why) {
    CongruenceReport r;
    r.check_id = std::move(id);
    r.params = params;
    r.required_ord = required;
    r.verdict = Verdict::skipped;
    r.note = std::move(why);
    return r;
}

/// Validates tp; returns the hypothesis violation that exploratory mode tolerates.
inline std::optional<std::string> admit(const TheoremParams& tp, Mode mode) {
    require_well_formed(tp);
    auto violation = hypothesis_violation(tp);
    if (violation && mode == Mode::asserted) {
        throw PreconditionViolated(*violation);
    }
    return violation;
}

inline void tag(std::vector<CongruenceReport>& reports, const std::optional<std::string>& violation) {
    if (!violation) {
        return;
    }
    for (auto& r : reports) {
        if (r.verdict != Verdict::skipped) {
            r.verdict = Verdict::hypothesis_violated;
            r.note = *violation;
        }
    }
}

inline CongruenceReport tag(CongruenceReport r, const std::optional<std::string>& violation) {
    if (violation && r.verdict != Verdict::skipped) {
        r.verdict = Verdict::hypothesis_violated;
        r.note = *violation;
    }
    return r;
}

}  // namespace detail

/// lhs == rhs (mod p^k), judged by the exact valuation of lhs - rhs.
inline CongruenceReport check_congruence(const Rational& lhs, const Rational& rhs, const PrimePowerModulus& m) {
    return detail::report_on("congruence", ReportParams{std::nullopt, std::nullopt, std::nullopt, m.p()}, lhs - rhs,
                             Valuation(static_cast<long>(m.k())));
}

/// Exact equality lhs == rhs, reported at p.
inline CongruenceReport check_exact(const Rational& lhs, const Rational& rhs, std::uint64_t p) {
    return detail::report_on("exact", ReportParams{std::nullopt, std::nullopt, std::nullopt, p}, lhs - rhs,
                             Valuation::infinity());
}

// ---------------------------------------------------------------------------
// Main theorems

inline CongruenceReport verify_theorem1(const TheoremParams& tp, Mode mode = Mode::asserted) {
    const auto violation = detail::admit(tp, mode);
    return detail::tag(detail::report_on("theorem1", ReportParams::of(tp), lhs_theorem1(tp), 3), violation);
}

inline CongruenceReport verify_theorem2(const TheoremParams& tp, Mode mode = Mode::asserted) {
    const auto violation = detail::admit(tp, mode);
    return detail::tag(detail::report_on("theorem2", ReportParams::of(tp), lhs_theorem2(tp), 3), violation);
}

/// Guo's sum for even d >= 4 and p == -1 (mod d), plus the exact match with
/// the theorem1 sum at n = d, q = (p+1)/d.
inline std::pair<CongruenceReport, CongruenceReport> verify_guo(long d, std::uint64_t p, Mode mode = Mode::asserted) {
    if (d < 3 || !is_prime(p) || (p + 1) % static_cast<std::uint64_t>(d) != 0) {
        throw PreconditionViolated("guo needs d >= 4 even and prime p == -1 (mod d)");
    }
    std::optional<std::string> violation;
    if (d % 2 != 0 || d < 4) {
        if (mode == Mode::asserted) {
            throw PreconditionViolated("guo needs an even d >= 4");
        }
        violation = "parity: d odd";
    }
    const ReportParams params{std::nullopt, std::nullopt, d, p};
    const Rational sum = guo_sum(d, p);
    const TheoremParams tp{d, static_cast<long>((p + 1) / static_cast<std::uint64_t>(d)), p};
    auto congruence = detail::report_on("guo", params, sum, 3);
    auto reduction = detail::report_on("guo.reduction", params, sum - lhs_theorem1(tp), Valuation::infinity());
    return {detail::tag(std::move(congruence), violation), detail::tag(std::move(reduction), violation)};
}

/// sum (1/(p+1))_k^{p+1} / k!^{p+1} == 0 (mod p^5), p > 3.
inline CongruenceReport verify_sun_e(std::uint64_t p) {
    if (p <= 3 || !is_prime(p)) {
        throw PreconditionViolated("sun-e needs a prime p > 3");
    }
    return detail::report_on("sun-e", ReportParams{std::nullopt, std::nullopt, std::nullopt, p}, sun_e_sum(p), 5);
}

/// sum (1 - p/n)_k^n / (1)_k^n == (n-1)(7n-5)/(36n^2) p^4 B_{p-3} (mod p^5).
inline CongruenceReport verify_sun_bernoulli(std::uint64_t p, long n) {
    if (p <= 3 || !is_prime(p)) {
        throw PreconditionViolated("sun-bernoulli needs a prime p > 3");
    }
    if (n < 1 || n % static_cast<long>(p) == 0) {
        throw PreconditionViolated("sun-bernoulli needs n >= 1 with p not dividing n");
    }
    const ReportParams params{n, std::nullopt, std::nullopt, p};
    return detail::report_on("sun-bernoulli", params, sun_bernoulli_sum(p, n) - sun_bernoulli_rhs(p, n), 5);
}

/// Both sides of the pair of congruences with right side -Gamma_p(1/n)^n
/// (mod p^3), for n >= 3 and p == 1 (mod n).
inline std::pair<CongruenceReport, CongruenceReport> verify_dflst_pair(long n, std::uint64_t p,
                                                                       std::uint64_t morita_cap = kDefaultMoritaCap) {
    if (n < 3 || !is_prime(p) || p % static_cast<std::uint64_t>(n) != 1) {
        throw PreconditionViolated("dflst needs n >= 3 and prime p == 1 (mod n)");
    }
    const PrimePowerModulus mod(p, 3);
    const Residue gamma = morita_gamma(Rational(1, n), mod, morita_cap);
    BigInt power;
    mpz_powm_ui(power.get_mpz_t(), gamma.value.get_mpz_t(), static_cast<unsigned long>(n), mod.value().get_mpz_t());
    const Rational rhs = -Rational(power);
    const ReportParams params{n, std::nullopt, std::nullopt, p};
    return {detail::report_on("dflst.first", params, dflst_first_sum(n, p) - rhs, 3),
            detail::report_on("dflst.dual", params, dflst_dual_sum(n, p) - rhs, 3)};
}

// ---------------------------------------------------------------------------
// Harmonic-sum lemmas

/// Seven weighted sums over k = 0..p-q with weights (q)_k^n/(1)_k^n or
/// (q-p/n)_k^n/(1)_k^n, each vanishing modulo p or p^2.
inline std::vector<CongruenceReport> verify_lemma_suite(const TheoremParams& tp, Mode mode = Mode::asserted) {
    const auto violation = detail::admit(tp, mode);
    const auto params = ReportParams::of(tp);
    const long last = tp.pl() - tp.q;
    const auto weights = power_ratio_terms(Rational(tp.q), Rational(1), tp.nu(), last);
    const auto shifted_weights = power_ratio_terms(Rational(tp.q) - tp.p_over_n(), Rational(1), tp.nu(), last);
    HarmonicTable h1(1);
    HarmonicTable h2(2);

    Rational hq1_sq;
    Rational hqk_sq;
    Rational hk_sq;
    Rational h_diff;
    Rational h_sq_diff;
    Rational shifted_diff;
    Rational shifted_diff_sq;
    Rational inner;  // sum_{i<k} 1/(q + i - p/n)
    for (long k = 0; k <= last; ++k) {
        const auto ku = static_cast<unsigned>(k);
        const auto qk = static_cast<unsigned>(tp.q + k - 1);
        const Rational& w = weights[ku];
        hq1_sq += w * h2(static_cast<unsigned>(tp.q - 1));
        hqk_sq += w * h2(qk);
        hk_sq += w * h2(ku);
        h_diff += w * (h1(ku) - h1(qk));
        h_sq_diff += w * (h1(ku) * h1(ku) - h1(qk) * h1(qk));
        const Rational gap = inner - h1(ku);
        shifted_diff += shifted_weights[ku] * gap;
        shifted_diff_sq += shifted_weights[ku] * gap * gap;
        inner += inverse(Rational(tp.q + k) - tp.p_over_n());
    }
    std::vector<CongruenceReport> out;
    out.push_back(detail::report_on("lemmas.hq1_sq", params, hq1_sq, 1));
    out.push_back(detail::report_on("lemmas.hqk_sq", params, hqk_sq, 1));
    out.push_back(detail::report_on("lemmas.hk_sq", params, hk_sq, 1));
    out.push_back(detail::report_on("lemmas.h_diff", params, h_diff, 1));
    out.push_back(detail::report_on("lemmas.h_sq_diff", params, h_sq_diff, 1));
    out.push_back(detail::report_on("lemmas.shifted_diff", params, shifted_diff, 2));
    out.push_back(detail::report_on("lemmas.shifted_diff_sq", params, shifted_diff_sq, 1));
    detail::tag(out, violation);
    return out;
}

// ---------------------------------------------------------------------------
// Taylor truncations

/// ord_p(p^r / r!), the valuation bounding the discarded Taylor terms.
inline long taylor_remainder_valuation(unsigned r, std::uint64_t p) {
    return static_cast<long>(r) - factorial_valuation(r, p);
}

/// Degree-2 Taylor polynomials built from jets agree with the exact values
/// modulo p^3: Psi at p/n, Phi at (p, 0), Delta at -p.
inline std::vector<CongruenceReport> verify_taylor(const TheoremParams& tp, Mode mode = Mode::asserted) {
    const auto violation = detail::admit(tp, mode);
    const auto params = ReportParams::of(tp);
    const Rational p(tp.pl());
    const Rational n(tp.n);
    std::vector<CongruenceReport> out;

    const Jet2 psi = psi_jet(tp, 2);
    const Rational psi_taylor = partial_coefficient(psi, 0, 0) + partial_coefficient(psi, 1, 0) / n * p +
                                partial_coefficient(psi, 2, 0) / (Rational(2) * n * n) * p * p;
    out.push_back(detail::report_on("taylor.psi", params, psi_value(tp, tp.p_over_n()) - psi_taylor, 3));

    const Jet2 phi = phi_jet(tp, 2);
    const Rational phi_taylor = partial_coefficient(phi, 0, 0) + partial_coefficient(phi, 1, 0) * p +
                                partial_coefficient(phi, 2, 0) / Rational(2) * p * p;
    out.push_back(detail::report_on("taylor.phi", params, phi_value(tp, p, Rational(0)) - phi_taylor, 3));

    const Jet2 delta = delta_jet(tp, 2);
    const Rational delta_taylor = partial_coefficient(delta, 0, 0) - partial_coefficient(delta, 1, 0) * p +
                                  partial_coefficient(delta, 2, 0) / Rational(2) * p * p;
    out.push_back(detail::report_on("taylor.delta", params, delta_value(tp, -p) - delta_taylor, 3));

    detail::tag(out, violation);
    return out;
}

// ---------------------------------------------------------------------------
// Exact identities and the final reductions

/// Reports, in order: Phi(p,0) = 0; the Upsilon jet vanishes through degree
/// 2; the theorem1 sum reduces to (n-1)/(2n) p^2 sum (q)_k^n/(1)_k^n S_2(q,k)
/// mod p^3; the reversal identity for (1)_k/(p/n-q+2)_k holds for every k;
/// the reversed dual sum vanishes mod p^3 (skipped for q = 1).
inline std::vector<CongruenceReport> verify_exact_identities(const TheoremParams& tp, Mode mode = Mode::asserted) {
    const auto violation = detail::admit(tp, mode);
    const auto params = ReportParams::of(tp);
    const Rational p(tp.pl());
    const Rational n(tp.n);
    std::vector<CongruenceReport> out;

    out.push_back(detail::report_on("identities.phi_at_p", params, phi_value(tp, p, Rational(0)),
                                    Valuation::infinity()));

    const Jet2 upsilon = upsilon_jet(tp, 2);
    out.push_back(detail::report_on("identities.upsilon_zero", params, upsilon.coefficients(),
                                    Valuation::infinity()));

    {
        const long last = tp.pl() - tp.q;
        const auto weights = power_ratio_terms(Rational(tp.q), Rational(1), tp.nu(), last);
        Rational weighted;
        Rational inner_sq;  // S_2(q, k)
        for (long k = 0; k <= last; ++k) {
            weighted += weights[static_cast<std::size_t>(k)] * inner_sq;
            inner_sq += inverse(pow(Rational(tp.q + k), 2));
        }
        const Rational reduced = (n - Rational(1)) / (Rational(2) * n) * p * p * weighted;
        out.push_back(detail::report_on("identities.reduction", params, lhs_theorem1(tp) - reduced, 3));
    }

    {
        const Rational lower = tp.p_over_n() - Rational(tp.q - 2);
        const Rational upper = Rational(tp.q) - tp.p_over_n() - p;
        const auto top = static_cast<unsigned>(tp.p - 1);
        const Rational head = pochhammer(Rational(1), top) / pochhammer(lower, top);
        std::vector<Rational> diffs;
        diffs.reserve(tp.p);
        for (unsigned k = 0; k <= top; ++k) {
            const Rational lhs = pochhammer(Rational(1), k) / pochhammer(lower, k);
            const Rational rhs =
                head * pochhammer(upper, top - k) / pochhammer(Rational(1) - p, top - k);
            diffs.push_back(lhs - rhs);
        }
        out.push_back(detail::report_on("identities.reflection", params, diffs, Valuation::infinity()));
    }

    if (tp.q > 1) {
        out.push_back(detail::report_on("identities.dual_reduction", params, dual_reduction_sum(tp), 3));
    } else {
        out.push_back(detail::skipped("identities.dual_reduction", params, 3, "q = 1: prefactor carries p^n"));
    }

    detail::tag(out, violation);
    return out;
}

}  // namespace hypercong
