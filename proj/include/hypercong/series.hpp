// Exact evaluation of truncated hypergeometric sums and of the parameter
// families (Psi, Phi, Upsilon, Delta) used by the congruence checks.
//
// Every sum is evaluated by the term recurrence t_{k+1} = t_k * ratio(k), so
// each step multiplies the running term by a small rational (or a jet with
// small coefficients) instead of rebuilding Pochhammer products.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypercong/combinatorics.hpp"
#include "hypercong/error.hpp"
#include "hypercong/jet.hpp"
#include "hypercong/padic.hpp"
#include "hypercong/rational.hpp"

namespace hypercong {

// ---------------------------------------------------------------------------
// Generic truncated series

struct HyperSeriesSpec {
    std::vector<Rational> upper;
    std::vector<Rational> lower;
    Rational argument{1};
    unsigned terms = 0;  ///< inclusive truncation index N
};

/// sum_{k=0}^{N} prod (a_i)_k / prod (b_j)_k * z^k / k!
inline Rational truncated_pfq(const HyperSeriesSpec& spec) {
    Rational sum(1);
    Rational term(1);
    for (unsigned k = 0; k < spec.terms; ++k) {
        const Rational shift(static_cast<long>(k));
        Rational ratio = spec.argument / Rational(static_cast<long>(k) + 1);
        for (const auto& b : spec.lower) {
            const Rational factor = b + shift;
            if (factor.is_zero()) {
                throw ZeroLowerFactor("lower parameter " + b.str() + " vanishes at k = " + std::to_string(k));
            }
            ratio /= factor;
        }
        for (const auto& a : spec.upper) {
            ratio *= a + shift;
        }
        term *= ratio;
        sum += term;
    }
    return sum;
}

struct KarlssonMintonPair {
    Rational b;
    unsigned m = 0;
};

struct KarlssonMintonResult {
    Rational value;
    /// Set when -a <= sum m_i, where vanishing is not guaranteed.
    bool hypothesis_violated = false;
};

/// sum_{k>=0} (a)_k prod (b_j+m_j)_k / ((1)_k prod (b_j)_k) for a negative
/// integer a; the sum terminates at k = -a. Vanishes when -a > sum m_j.
inline KarlssonMintonResult karlsson_minton_sum(const Rational& a, std::span<const KarlssonMintonPair> pairs) {
    if (!a.is_integer() || a.sign() >= 0) {
        throw NotTerminating("upper parameter " + a.str() + " is not a negative integer");
    }
    const auto length = static_cast<unsigned>((-a).num().get_ui());
    unsigned long excess = 0;
    HyperSeriesSpec spec;
    spec.upper.push_back(a);
    for (const auto& [b, m] : pairs) {
        spec.upper.push_back(b + Rational(static_cast<long>(m)));
        spec.lower.push_back(b);
        excess += m;
    }
    spec.argument = Rational(1);
    spec.terms = length;
    return {truncated_pfq(spec), length <= excess};
}

// ---------------------------------------------------------------------------
// Power-ratio sums  sum_{k=0}^{K} ((a)_k / (b)_k)^n

/// Terms ((a)_k/(b)_k)^n for k = 0..last; empty when last < 0.
inline std::vector<Rational> power_ratio_terms(const Rational& a, const Rational& b, unsigned n, long last) {
    std::vector<Rational> terms;
    if (last < 0) {
        return terms;
    }
    terms.reserve(static_cast<std::size_t>(last) + 1);
    terms.emplace_back(1);
    for (long k = 0; k < last; ++k) {
        const Rational lower = b + Rational(k);
        if (lower.is_zero()) {
            throw ZeroLowerFactor("lower Pochhammer vanishes at k = " + std::to_string(k));
        }
        terms.push_back(terms.back() * pow((a + Rational(k)) / lower, n));
    }
    return terms;
}

inline Rational power_ratio_sum(const Rational& a, const Rational& b, unsigned n, long last) {
    Rational sum;
    for (const auto& t : power_ratio_terms(a, b, n, last)) {
        sum += t;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Theorem parameters

/// (n, q, p): exponent n > 2, shift q > 0 and a prime p. The parity and
/// range hypotheses are checked separately so exploratory runs can relax them.
struct TheoremParams {
    long n = 3;
    long q = 1;
    std::uint64_t p = 5;

    Rational p_over_n() const { return Rational(static_cast<long>(p), n); }
    long pl() const { return static_cast<long>(p); }
    unsigned nu() const { return static_cast<unsigned>(n); }

    friend bool operator==(const TheoremParams&, const TheoremParams&) = default;
};

/// Structural requirements that hold even in exploratory mode.
inline void require_well_formed(const TheoremParams& tp) {
    if (tp.n <= 2) {
        throw PreconditionViolated("n must exceed 2 (got " + std::to_string(tp.n) + ")");
    }
    if (tp.q <= 0) {
        throw PreconditionViolated("q must be positive (got " + std::to_string(tp.q) + ")");
    }
    if (!is_prime(tp.p)) {
        throw PreconditionViolated(std::to_string(tp.p) + " is not prime");
    }
    if (tp.p > 1'000'000) {
        throw PreconditionViolated("prime too large for exact summation");
    }
}

/// Reason the parity/range hypotheses fail, or nullopt when they hold.
inline std::optional<std::string> hypothesis_violation(const TheoremParams& tp) {
    if (tp.n % 2 != 0 && tp.q % 2 == 0) {
        return "parity: n odd and q even";
    }
    const long bound = std::max(tp.n, (tp.q - 1) * tp.n + 1);
    if (tp.pl() <= bound) {
        return "range: p <= max{n, (q-1)n+1} = " + std::to_string(bound);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exact sums

/// sum_{k=0}^{p-1} (q - p/n)_k^n / (1)_k^n
inline Rational lhs_theorem1(const TheoremParams& tp) {
    return power_ratio_sum(Rational(tp.q) - tp.p_over_n(), Rational(1), tp.nu(), tp.pl() - 1);
}

/// p^n sum_{k=0}^{p-1} (1)_k^n / (p/n - q + 2)_k^n
inline Rational lhs_theorem2(const TheoremParams& tp) {
    const Rational scale = pow(Rational(tp.pl()), tp.nu());
    return scale * power_ratio_sum(Rational(1), tp.p_over_n() - Rational(tp.q - 2), tp.nu(), tp.pl() - 1);
}

/// Psi(x) = sum_{k=0}^{p-q} (q - x)_k^n / (1)_k^n
inline Rational psi_value(const TheoremParams& tp, const Rational& x) {
    return power_ratio_sum(Rational(tp.q) - x, Rational(1), tp.nu(), tp.pl() - tp.q);
}

/// Phi(x, y) = sum_{k=0}^{p-q} (q - x)_k (q - y)_k^{n-1} / (1)_k^n
inline Rational phi_value(const TheoremParams& tp, const Rational& x, const Rational& y) {
    Rational sum;
    Rational term(1);
    const long last = tp.pl() - tp.q;
    for (long k = 0; k <= last; ++k) {
        sum += term;
        const Rational base(tp.q + k);
        term *= (base - x) * pow(base - y, tp.nu() - 1) / pow(Rational(k + 1), tp.nu());
    }
    return sum;
}

/// Delta(x) = sum_{k=0}^{p-q} (q - p/n + x)_k^n / (1 + x)_k^n
inline Rational delta_value(const TheoremParams& tp, const Rational& x) {
    return power_ratio_sum(Rational(tp.q) - tp.p_over_n() + x, Rational(1) + x, tp.nu(), tp.pl() - tp.q);
}

/// sum_{k=0}^{p-1} (q - p/n - p)_k^n / (1 - p)_k^n
inline Rational dual_reduction_sum(const TheoremParams& tp) {
    return power_ratio_sum(Rational(tp.q) - tp.p_over_n() - Rational(tp.pl()), Rational(1 - tp.pl()), tp.nu(),
                           tp.pl() - 1);
}

/// p^n (1)_{p-1}^n / (p/n - q + 2)_{p-1}^n, the factor pulled out of the
/// dual sum by reversing the order of summation.
inline Rational theorem2_prefactor(const TheoremParams& tp) {
    const Rational ratio = pochhammer(Rational(1), static_cast<unsigned>(tp.p - 1)) /
                           pochhammer(tp.p_over_n() - Rational(tp.q - 2), static_cast<unsigned>(tp.p - 1));
    return pow(Rational(tp.pl()), tp.nu()) * pow(ratio, tp.nu());
}

/// sum_{k=0}^{p-1} (1/d)_k^d / k!^d
inline Rational guo_sum(long d, std::uint64_t p) {
    return power_ratio_sum(Rational(1, d), Rational(1), static_cast<unsigned>(d), static_cast<long>(p) - 1);
}

/// sum_{k=0}^{p-1} (1/(p+1))_k^{p+1} / k!^{p+1}
inline Rational sun_e_sum(std::uint64_t p) {
    const long pl = static_cast<long>(p);
    return power_ratio_sum(Rational(1, pl + 1), Rational(1), static_cast<unsigned>(pl + 1), pl - 1);
}

/// sum_{k=0}^{p-1} (1 - p/n)_k^n / (1)_k^n
inline Rational sun_bernoulli_sum(std::uint64_t p, long n) {
    const long pl = static_cast<long>(p);
    return power_ratio_sum(Rational(1) - Rational(pl, n), Rational(1), static_cast<unsigned>(n), pl - 1);
}

/// ((n-1)(7n-5) / (36 n^2)) p^4 B_{p-3}
inline Rational sun_bernoulli_rhs(std::uint64_t p, long n) {
    const long pl = static_cast<long>(p);
    return Rational((n - 1) * (7 * n - 5), 36 * n * n) * pow(Rational(pl), 4) *
           bernoulli(static_cast<unsigned>(p - 3));
}

/// sum_{k=0}^{p-1} (1 - 1/n)_k^n / (1)_k^n
inline Rational dflst_first_sum(long n, std::uint64_t p) {
    return power_ratio_sum(Rational(1) - Rational(1, n), Rational(1), static_cast<unsigned>(n),
                           static_cast<long>(p) - 1);
}

/// p^n sum_{k=0}^{p-1} (1)_k^n / (1 + 1/n)_k^n
inline Rational dflst_dual_sum(long n, std::uint64_t p) {
    const long pl = static_cast<long>(p);
    return pow(Rational(pl), static_cast<unsigned>(n)) *
           power_ratio_sum(Rational(1), Rational(1) + Rational(1, n), static_cast<unsigned>(n), pl - 1);
}

// ---------------------------------------------------------------------------
// Jet-valued sums

namespace detail {
/// Jet of (c + sign*var) / (d + sign*var) with small rational c, d.
inline Jet2 linear_ratio_jet(unsigned cap, const Rational& c, const Rational& d, JetVar var, int sign) {
    const Jet2 den = Jet2::linear(cap, d, var, Rational(sign));
    return Jet2::linear(cap, c, var, Rational(sign)) * den.reciprocal();
}
}  // namespace detail

/// Univariate jet of Psi at x = 0.
inline Jet2 psi_jet(const TheoremParams& tp, unsigned cap) {
    Jet2 sum(cap);
    Jet2 term = Jet2::constant(cap, Rational(1));
    const long last = tp.pl() - tp.q;
    for (long k = 0; k <= last; ++k) {
        sum += term;
        if (k == last) {
            break;
        }
        const Jet2 factor = Jet2::linear(cap, Rational(tp.q + k, k + 1), JetVar::x, Rational(-1, k + 1));
        term *= pow(factor, tp.nu());
    }
    return sum;
}

/// Jet of Phi at (x, y) = (0, 0).
inline Jet2 phi_jet(const TheoremParams& tp, unsigned cap) {
    Jet2 sum(cap);
    Jet2 term = Jet2::constant(cap, Rational(1));
    const long last = tp.pl() - tp.q;
    for (long k = 0; k <= last; ++k) {
        sum += term;
        if (k == last) {
            break;
        }
        const Rational base(tp.q + k);
        Jet2 factor = Jet2::linear(cap, base, JetVar::x, Rational(-1)) *
                      pow(Jet2::linear(cap, base, JetVar::y, Rational(-1)), tp.nu() - 1);
        factor *= inverse(pow(Rational(k + 1), tp.nu()));
        term *= factor;
    }
    return sum;
}

/// Univariate jet of Delta at x = 0.
inline Jet2 delta_jet(const TheoremParams& tp, unsigned cap) {
    Jet2 sum(cap);
    Jet2 term = Jet2::constant(cap, Rational(1));
    const long last = tp.pl() - tp.q;
    const Rational shift = Rational(tp.q) - tp.p_over_n();
    for (long k = 0; k <= last; ++k) {
        sum += term;
        if (k == last) {
            break;
        }
        const Jet2 factor = detail::linear_ratio_jet(cap, shift + Rational(k), Rational(1 + k), JetVar::x, 1);
        term *= pow(factor, tp.nu());
    }
    return sum;
}

/// Jet of Upsilon(x, y) = sum_{k=0}^{p-1} (1-p)_k (q+x)_k (q+y)_k (q)_k^{n-2}
///                        / ((1)_k^{n-1} (1+x)_k (1+y)_k)  at the origin.
inline Jet2 upsilon_jet(const TheoremParams& tp, unsigned cap) {
    Jet2 sum(cap);
    Jet2 term = Jet2::constant(cap, Rational(1));
    const long last = tp.pl() - 1;
    for (long k = 0; k <= last; ++k) {
        sum += term;
        if (k == last) {
            break;
        }
        const Rational scalar = Rational(1 - tp.pl() + k) * pow(Rational(tp.q + k), tp.nu() - 2) /
                                pow(Rational(1 + k), tp.nu() - 1);
        if (scalar.is_zero()) {
            break;  // (1-p)_k vanishes from here on
        }
        Jet2 factor = detail::linear_ratio_jet(cap, Rational(tp.q + k), Rational(1 + k), JetVar::x, 1) *
                      detail::linear_ratio_jet(cap, Rational(tp.q + k), Rational(1 + k), JetVar::y, 1);
        factor *= scalar;
        term *= factor;
    }
    return sum;
}

}  // namespace hypercong
