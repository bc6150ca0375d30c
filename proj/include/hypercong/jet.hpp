// Bivariate truncated power series over the rationals.
//
// A Jet2 of cap D stores the coefficients c(i, j) of x^i y^j for i + j <= D
// and represents a function by its Taylor polynomial at the origin. The
// ring operations truncate every product to total degree D, so a jet built
// from exact factors carries exact partial derivatives up to order D.
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hypercong/error.hpp"
#include "hypercong/rational.hpp"

namespace hypercong {

inline constexpr unsigned kMaxJetCap = 4;

enum class JetVar { x, y };
enum class JetOp { add, sub, mul, div };

class Jet2 {
public:
    explicit Jet2(unsigned cap) : cap_(cap), coeffs_(slot_count(cap)) { check_cap(cap); }

    static Jet2 constant(unsigned cap, const Rational& value) {
        Jet2 j(cap);
        j.coeffs_[0] = value;
        return j;
    }

    /// The jet of `value + var`.
    static Jet2 linear(unsigned cap, const Rational& value, JetVar var, const Rational& slope = 1) {
        Jet2 j = constant(cap, value);
        if (cap >= 1) {
            j.coeffs_[var == JetVar::x ? slot(1, 0) : slot(0, 1)] = slope;
        }
        return j;
    }

    unsigned cap() const { return cap_; }

    const Rational& coefficient(unsigned i, unsigned j) const {
        check_index(i, j);
        return coeffs_[slot(i, j)];
    }

    void set_coefficient(unsigned i, unsigned j, Rational value) {
        check_index(i, j);
        coeffs_[slot(i, j)] = std::move(value);
    }

    const Rational& constant_term() const { return coeffs_[0]; }

    bool is_zero() const {
        for (const auto& c : coeffs_) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }

    /// Raw coefficients in graded order: (0,0), (1,0), (0,1), (2,0), (1,1), ...
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Jet2& operator+=(const Jet2& rhs) {
        check_same_cap(rhs);
        for (std::size_t s = 0; s < coeffs_.size(); ++s) {
            coeffs_[s] += rhs.coeffs_[s];
        }
        return *this;
    }

    Jet2& operator-=(const Jet2& rhs) {
        check_same_cap(rhs);
        for (std::size_t s = 0; s < coeffs_.size(); ++s) {
            coeffs_[s] -= rhs.coeffs_[s];
        }
        return *this;
    }

    Jet2& operator*=(const Rational& scalar) {
        for (auto& c : coeffs_) {
            c *= scalar;
        }
        return *this;
    }

    friend Jet2 operator*(const Jet2& lhs, const Jet2& rhs) {
        lhs.check_same_cap(rhs);
        const unsigned cap = lhs.cap_;
        Jet2 out(cap);
        for (unsigned da = 0; da <= cap; ++da) {
            for (unsigned ja = 0; ja <= da; ++ja) {
                const Rational& a = lhs.coeffs_[slot(da - ja, ja)];
                if (a.is_zero()) {
                    continue;
                }
                for (unsigned db = 0; da + db <= cap; ++db) {
                    for (unsigned jb = 0; jb <= db; ++jb) {
                        const Rational& b = rhs.coeffs_[slot(db - jb, jb)];
                        if (b.is_zero()) {
                            continue;
                        }
                        out.coeffs_[slot(da - ja + db - jb, ja + jb)] += a * b;
                    }
                }
            }
        }
        return out;
    }

    Jet2& operator*=(const Jet2& rhs) { return *this = *this * rhs; }

    /// Truncated multiplicative inverse; needs a nonzero constant term.
    Jet2 reciprocal() const {
        if (coeffs_[0].is_zero()) {
            throw DivByNonUnit("jet with zero constant term has no inverse");
        }
        // 1/(c(1+u)) = (1/c) sum_{m=0}^{D} (-u)^m, with u nilpotent of order D+1.
        const Rational inv_c = inverse(coeffs_[0]);
        Jet2 neg_u = *this;
        neg_u.coeffs_[0] = Rational(0);
        neg_u *= -inv_c;
        Jet2 out = constant(cap_, Rational(1));
        Jet2 power = out;
        for (unsigned m = 1; m <= cap_; ++m) {
            power = power * neg_u;
            out += power;
        }
        out *= inv_c;
        return out;
    }

    Jet2& operator/=(const Jet2& rhs) {
        check_same_cap(rhs);
        return *this = *this * rhs.reciprocal();
    }

    friend Jet2 operator+(Jet2 lhs, const Jet2& rhs) { return lhs += rhs; }
    friend Jet2 operator-(Jet2 lhs, const Jet2& rhs) { return lhs -= rhs; }
    friend Jet2 operator/(Jet2 lhs, const Jet2& rhs) { return lhs /= rhs; }
    friend Jet2 operator*(Jet2 lhs, const Rational& scalar) { return lhs *= scalar; }

    friend bool operator==(const Jet2& a, const Jet2& b) {
        return a.cap_ == b.cap_ && a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t slot_count(unsigned cap) { return (cap + 1U) * (cap + 2U) / 2U; }

    static std::size_t slot(unsigned i, unsigned j) {
        const unsigned d = i + j;
        return d * (d + 1U) / 2U + j;
    }

    static void check_cap(unsigned cap) {
        if (cap > kMaxJetCap) {
            throw CapExceeded("jet cap " + std::to_string(cap) + " above " + std::to_string(kMaxJetCap));
        }
    }

    void check_index(unsigned i, unsigned j) const {
        if (i + j > cap_) {
            throw CapExceeded("exponent (" + std::to_string(i) + "," + std::to_string(j) +
                              ") beyond cap " + std::to_string(cap_));
        }
    }

    void check_same_cap(const Jet2& other) const {
        if (other.cap_ != cap_) {
            throw CapMismatch("caps " + std::to_string(cap_) + " and " + std::to_string(other.cap_));
        }
    }

    unsigned cap_;
    std::vector<Rational> coeffs_;
};

inline Jet2 jet_arith(const Jet2& lhs, const Jet2& rhs, JetOp op) {
    switch (op) {
        case JetOp::add: return lhs + rhs;
        case JetOp::sub: return lhs - rhs;
        case JetOp::mul: return lhs * rhs;
        case JetOp::div: return lhs / rhs;
    }
    throw Error("unknown jet operation");
}

inline Jet2 pow(const Jet2& base, unsigned exponent) {
    Jet2 out = Jet2::constant(base.cap(), Rational(1));
    Jet2 square = base;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            out *= square;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            square *= square;
        }
    }
    return out;
}

/// Jet of (base + sign*var)_k = prod_{i<k} (base + i + sign*var).
inline Jet2 pochhammer_jet(const Rational& base, int sign, JetVar var, unsigned k, unsigned cap) {
    if (sign != 1 && sign != -1) {
        throw PreconditionViolated("pochhammer_jet sign must be +1 or -1");
    }
    Jet2 out = Jet2::constant(cap, Rational(1));
    for (unsigned i = 0; i < k; ++i) {
        out *= Jet2::linear(cap, base + Rational(static_cast<long>(i)), var, Rational(sign));
    }
    return out;
}

/// d^{i+j}/dx^i dy^j at the origin, i.e. i! j! c(i, j).
inline Rational partial_coefficient(const Jet2& jet, unsigned i, unsigned j) {
    Rational scale(1);
    for (unsigned t = 2; t <= i; ++t) {
        scale *= Rational(static_cast<long>(t));
    }
    for (unsigned t = 2; t <= j; ++t) {
        scale *= Rational(static_cast<long>(t));
    }
    return jet.coefficient(i, j) * scale;
}

}  // namespace hypercong
