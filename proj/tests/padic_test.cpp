#include <gtest/gtest.h>

#include <cstdint>
#include <cstdlib>
#include <random>

#include "hypercong/combinatorics.hpp"
#include "hypercong/padic.hpp"
#include "test_support.hpp"

namespace hypercong {
namespace {

using testing::R;

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

TEST(IsPrime, MatchesTrialDivision) {
    for (std::uint64_t n = 0; n < 20000; ++n) {
        ASSERT_EQ(is_prime(n), trial_division_prime(n)) << n;
    }
}

TEST(IsPrime, LargeInputs) {
    EXPECT_TRUE(is_prime(2305843009213693951ULL));   // 2^61 - 1
    EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to the first nine prime bases
}

TEST(Valuation, InfinityOrdersAboveIntegers) {
    EXPECT_LT(Valuation(1000000), Valuation::infinity());
    EXPECT_EQ(Valuation::infinity(), Valuation::infinity());
    EXPECT_EQ(Valuation::infinity().str(), "inf");
    EXPECT_EQ(Valuation(-2).str(), "-2");
    EXPECT_EQ(min(Valuation(3), Valuation::infinity()), Valuation(3));
}

TEST(OrdRational, Examples) {
    EXPECT_EQ(ord_rational(R(50, 3), 5), Valuation(2));
    EXPECT_EQ(ord_rational(R(3, 50), 5), Valuation(-2));
    EXPECT_EQ(ord_rational(R(0), 7), Valuation::infinity());
    EXPECT_EQ(ord_rational(R(49, 20), 7), Valuation(2));
}

TEST(OrdRational, NotPrime) {
    EXPECT_THROW(ord_rational(R(4), 4), NotPrime);
    EXPECT_THROW(ord_rational(R(4), 1), NotPrime);
}

TEST(ReduceMod, Examples) {
    EXPECT_EQ(reduce_mod(R(1, 2), PrimePowerModulus(5, 2)).value, 13);
    EXPECT_EQ(reduce_mod(R(-1), PrimePowerModulus(7, 3)).value, 342);
    EXPECT_EQ(reduce_mod(R(7, 5), PrimePowerModulus(7, 2)).value, 21);
}

TEST(ReduceMod, NotPIntegral) {
    EXPECT_THROW(reduce_mod(R(1, 7), PrimePowerModulus(7, 1)), NotPIntegral);
}

TEST(PrimePowerModulus, Validation) {
    EXPECT_THROW(PrimePowerModulus(9, 2), NotPrime);
    EXPECT_THROW(PrimePowerModulus(7, 0), PreconditionViolated);
    EXPECT_EQ(PrimePowerModulus(7, 3).value(), 343);
}

TEST(ReduceMod, RoundTripProperty) {
    std::mt19937_64 rng(99);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 101};
    std::uniform_int_distribution<unsigned> pick(0, 6);
    std::uniform_int_distribution<unsigned> prec(1, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t p = primes[pick(rng)];
        const Rational r = testing::random_rational(rng, 100000);
        if (ord_rational(r, p) < Valuation(0)) {
            continue;
        }
        const PrimePowerModulus m(p, prec(rng));
        const Residue t = reduce_mod(r, m);
        ASSERT_GE(t.value, 0);
        ASSERT_LT(t.value, m.value());
        BigInt check = r.den() * t.value - r.num();
        ASSERT_EQ(check % m.value(), 0);
    }
}

TEST(FactorialValuation, Examples) {
    EXPECT_EQ(factorial_valuation(0, 5), 0);
    EXPECT_EQ(factorial_valuation(10, 5), 2);
    EXPECT_EQ(factorial_valuation(25, 5), 6);
}

TEST(FactorialValuation, LegendreBoundAndExactDivision) {
    for (std::uint64_t p = 2; p <= 50; ++p) {
        if (!is_prime(p)) {
            continue;
        }
        BigInt fact = 1;
        for (std::uint64_t r = 0; r <= 1000; ++r) {
            if (r > 0) {
                fact *= static_cast<unsigned long>(r);
            }
            const long e = factorial_valuation(r, p);
            ASSERT_LE(static_cast<double>(e), static_cast<double>(r) / static_cast<double>(p - 1));
            ASSERT_EQ(ord_integer(fact, p), Valuation(e)) << r << "! at " << p;
        }
    }
}

TEST(Bernoulli, Examples) {
    EXPECT_EQ(bernoulli(0), R(1));
    EXPECT_EQ(bernoulli(1), R(-1, 2));
    EXPECT_EQ(bernoulli(2), R(1, 6));
    EXPECT_EQ(bernoulli(3), R(0));
    EXPECT_EQ(bernoulli(4), R(-1, 30));
    EXPECT_EQ(bernoulli(12), R(-691, 2730));
}

TEST(Bernoulli, OddIndicesVanish) {
    for (unsigned m = 3; m < 60; m += 2) {
        ASSERT_TRUE(bernoulli(m).is_zero()) << m;
    }
}

TEST(Bernoulli, CapExceeded) { EXPECT_THROW(bernoulli(kBernoulliCap + 1), CapExceeded); }

/// (-1)^N prod_{1<=j<N, p!|j} j mod p^k, with N found by search.
std::uint64_t gamma_oracle(std::uint64_t num, std::uint64_t den, std::uint64_t p, unsigned k) {
    std::uint64_t m = 1;
    for (unsigned i = 0; i < k; ++i) {
        m *= p;
    }
    std::uint64_t lift = 0;
    for (std::uint64_t cand = 1; cand <= m; ++cand) {
        if ((den * cand) % m == num % m) {
            lift = cand;
            break;
        }
    }
    std::uint64_t prod = 1;
    for (std::uint64_t j = 1; j < lift; ++j) {
        if (j % p != 0) {
            prod = prod * j % m;
        }
    }
    return lift % 2 == 1 ? (m - prod) % m : prod;
}

TEST(MoritaGamma, Examples) {
    EXPECT_EQ(morita_gamma(R(1), PrimePowerModulus(5, 1)).value, 4);
    EXPECT_EQ(morita_gamma(R(2), PrimePowerModulus(5, 1)).value, 1);
    const auto oracle = gamma_oracle(1, 3, 7, 3);
    EXPECT_EQ(oracle, 270U);
    EXPECT_EQ(morita_gamma(R(1, 3), PrimePowerModulus(7, 3)).value, 270);
}

TEST(MoritaGamma, AgreesWithOracle) {
    for (const std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL}) {
        for (unsigned den = 1; den <= 6; ++den) {
            if (den % p == 0) {
                continue;
            }
            for (unsigned num = 0; num <= 8; ++num) {
                ASSERT_EQ(morita_gamma(R(num, den), PrimePowerModulus(p, 2)).value,
                          gamma_oracle(num, den, p, 2));
            }
        }
    }
}

TEST(MoritaGamma, FunctionalEquation) {
    for (const std::uint64_t p : {3ULL, 5ULL, 7ULL, 13ULL}) {
        const PrimePowerModulus m(p, 3);
        for (long big_n = 1; big_n < 400; ++big_n) {
            const BigInt lhs = morita_gamma(R(big_n + 1), m).value;
            const BigInt g = morita_gamma(R(big_n), m).value;
            BigInt rhs = big_n % static_cast<long>(p) == 0 ? BigInt(-g) : BigInt(-big_n * g);
            mpz_mod(rhs.get_mpz_t(), rhs.get_mpz_t(), m.value().get_mpz_t());
            ASSERT_EQ(lhs, rhs) << "p=" << p << " N=" << big_n;
        }
    }
}

TEST(MoritaGamma, Errors) {
    EXPECT_THROW(morita_gamma(R(1, 7), PrimePowerModulus(7, 2)), NotPIntegral);
    EXPECT_THROW(morita_gamma(R(1, 3), PrimePowerModulus(7, 3), 100), PrecisionCapExceeded);
    EXPECT_THROW(morita_gamma(R(1, 3), PrimePowerModulus(2, 3)), PreconditionViolated);
}

TEST(MoritaGamma, CapFromEnvironment) {
    ::unsetenv("HYPERCONG_MORITA_CAP");
    EXPECT_EQ(morita_cap_from_env(), kDefaultMoritaCap);
    ::setenv("HYPERCONG_MORITA_CAP", "12345", 1);
    EXPECT_EQ(morita_cap_from_env(), 12345U);
    ::setenv("HYPERCONG_MORITA_CAP", "abc", 1);
    EXPECT_THROW(morita_cap_from_env(), ConfigError);
    ::unsetenv("HYPERCONG_MORITA_CAP");
}

TEST(Wolstenholme, HarmonicValuations) {
    for (std::uint64_t p = 5; p <= 200; ++p) {
        if (!is_prime(p)) {
            continue;
        }
        const auto k = static_cast<unsigned>(p - 1);
        ASSERT_GE(ord_rational(harmonic(k, 1), p), Valuation(2)) << p;
        ASSERT_GE(ord_rational(harmonic(k, 2), p), Valuation(1)) << p;
    }
}

TEST(Wolstenholme, HarmonicReflectionModP) {
    for (std::uint64_t p = 5; p <= 61; ++p) {
        if (!is_prime(p)) {
            continue;
        }
        const PrimePowerModulus mod(p, 1);
        HarmonicTable h1(1);
        HarmonicTable h2(2);
        for (unsigned m = 1; m < p; ++m) {
            const auto mirror = static_cast<unsigned>(p - 1 - m);
            ASSERT_EQ(reduce_mod(h1(mirror) - h1(m), mod).value, 0) << p << " " << m;
            ASSERT_EQ(reduce_mod(h2(mirror) + h2(m), mod).value, 0) << p << " " << m;
        }
    }
}

}  // namespace
}  // namespace hypercong
