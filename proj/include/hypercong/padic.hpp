// p-adic valuations, residues modulo prime powers, Bernoulli numbers and
// Morita's p-adic Gamma function.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hypercong/error.hpp"
#include "hypercong/rational.hpp"

namespace hypercong {

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (const auto b : bases) {
        if (n % b == 0) {
            return n == b;
        }
    }
    using u128 = unsigned __int128;
    const auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
    };
    const auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e != 0) {
            if ((e & 1U) != 0) {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1U;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (const auto a : bases) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

inline void require_prime(std::uint64_t p) {
    if (!is_prime(p)) {
        throw NotPrime(std::to_string(p) + " is not prime");
    }
}

/// A p-adic valuation: an integer, or +infinity for zero.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr Valuation(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)

    static constexpr Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }
    /// Only meaningful when finite.
    constexpr long value() const { return value_; }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) {
            return a.infinite_ <=> b.infinite_;
        }
        return a.value_ <=> b.value_;
    }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) {
            return infinity();
        }
        return a.value_ + b.value_;
    }

private:
    long value_ = 0;
    bool infinite_ = false;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

/// Modulus p^k with p prime and k >= 1.
class PrimePowerModulus {
public:
    PrimePowerModulus(std::uint64_t p, unsigned k) : p_(p), k_(k) {
        require_prime(p);
        if (k == 0) {
            throw PreconditionViolated("precision exponent must be >= 1");
        }
        mpz_ui_pow_ui(modulus_.get_mpz_t(), p, k);
    }

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    const BigInt& value() const { return modulus_; }

    friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) {
        return a.p_ == b.p_ && a.k_ == b.k_;
    }

private:
    std::uint64_t p_;
    unsigned k_;
    BigInt modulus_;
};

/// Least nonnegative representative modulo p^k.
struct Residue {
    BigInt value;
    PrimePowerModulus modulus;

    std::string str() const { return value.get_str(10); }
    friend bool operator==(const Residue& a, const Residue& b) {
        return a.value == b.value && a.modulus == b.modulus;
    }
};

namespace detail {
inline long remove_factor(BigInt& n, std::uint64_t p) {
    if (n == 0) {
        return 0;
    }
    const BigInt prime(static_cast<unsigned long>(p));
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}
}  // namespace detail

inline Valuation ord_integer(const BigInt& n, std::uint64_t p) {
    if (n == 0) {
        return Valuation::infinity();
    }
    BigInt copy = n;
    return detail::remove_factor(copy, p);
}

inline Valuation ord_rational(const Rational& r, std::uint64_t p) {
    require_prime(p);
    if (r.is_zero()) {
        return Valuation::infinity();
    }
    // Lowest terms: at most one of numerator and denominator carries p.
    BigInt num = r.num();
    const long up = detail::remove_factor(num, p);
    if (up > 0) {
        return up;
    }
    BigInt den = r.den();
    return -detail::remove_factor(den, p);
}

inline Residue reduce_mod(const Rational& r, const PrimePowerModulus& m) {
    if (ord_rational(r, m.p()) < Valuation(0)) {
        throw NotPIntegral(r.str() + " is not " + std::to_string(m.p()) + "-integral");
    }
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), r.den().get_mpz_t(), m.value().get_mpz_t());
    BigInt t = r.num() * inv;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.value().get_mpz_t());
    return Residue{t, m};
}

/// ord_p(r!) by Legendre's formula.
inline long factorial_valuation(std::uint64_t r, std::uint64_t p) {
    long total = 0;
    for (std::uint64_t q = r / p; q != 0; q /= p) {
        total += static_cast<long>(q);
    }
    return total;
}

inline constexpr unsigned kBernoulliCap = 10000;

namespace detail {
struct BernoulliCache {
    std::mutex mutex;
    std::vector<Rational> values{Rational(1)};
};
inline BernoulliCache& bernoulli_cache() {
    static BernoulliCache cache;
    return cache;
}
}  // namespace detail

/// B_m with B_1 = -1/2, from sum_{j=0}^{m} C(m+1, j) B_j = 0.
/// Values are cached process-wide; the cache is append-only.
inline Rational bernoulli(unsigned m) {
    if (m > kBernoulliCap) {
        throw CapExceeded("bernoulli index " + std::to_string(m) + " above cap");
    }
    auto& cache = detail::bernoulli_cache();
    const std::lock_guard lock(cache.mutex);
    auto& values = cache.values;
    while (values.size() <= m) {
        const auto next = static_cast<unsigned long>(values.size());
        // C(next+1, j) for j = 0 .. next-1
        Rational acc;
        BigInt binom = 1;
        for (unsigned long j = 0; j < next; ++j) {
            if (!values[j].is_zero()) {
                acc += Rational(binom) * values[j];
            }
            binom = binom * (next + 1 - j) / (j + 1);
        }
        // binom is now C(next+1, next) = next+1
        values.push_back(-acc / Rational(binom));
    }
    return values[m];
}

inline constexpr std::uint64_t kDefaultMoritaCap = 10'000'000;

/// Morita cap, overridable by HYPERCONG_MORITA_CAP.
inline std::uint64_t morita_cap_from_env() {
    if (const char* env = std::getenv("HYPERCONG_MORITA_CAP"); env != nullptr) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return v;
        }
        throw ConfigError(std::string("bad HYPERCONG_MORITA_CAP '") + env + "'");
    }
    return kDefaultMoritaCap;
}

/// Gamma_p(x) mod p^k, Morita normalization (Gamma_p(0) = 1, Gamma_p(1) = -1).
/// Lifts x to 1 <= N <= p^k and returns (-1)^N prod_{1<=j<N, p!|j} j.
inline Residue morita_gamma(const Rational& x, const PrimePowerModulus& m,
                            std::uint64_t cap = kDefaultMoritaCap) {
    if (m.p() == 2) {
        throw PreconditionViolated("morita_gamma needs an odd prime");
    }
    if (m.value() > BigInt(static_cast<unsigned long>(cap))) {
        throw PrecisionCapExceeded(m.value().get_str() + " exceeds Morita cap " + std::to_string(cap));
    }
    const auto modulus = m.value().get_ui();
    std::uint64_t lift = reduce_mod(x, m).value.get_ui();
    if (lift == 0) {
        lift = modulus;
    }
    using u128 = unsigned __int128;
    std::uint64_t product = 1;
    for (std::uint64_t j = 1; j < lift; ++j) {
        if (j % m.p() != 0) {
            product = static_cast<std::uint64_t>(static_cast<u128>(product) * j % modulus);
        }
    }
    if (lift % 2 == 1) {
        product = (modulus - product) % modulus;
    }
    return Residue{BigInt(static_cast<unsigned long>(product)), m};
}

}  // namespace hypercong
