// Pochhammer symbols, harmonic numbers and related finite sums.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypercong/error.hpp"
#include "hypercong/rational.hpp"

namespace hypercong {

/// Rising factorial (x)_k = x(x+1)...(x+k-1); (x)_0 = 1.
inline Rational pochhammer(const Rational& x, unsigned k) {
    Rational out(1);
    Rational factor = x;
    for (unsigned i = 0; i < k; ++i) {
        out *= factor;
        if (out.is_zero()) {
            return out;
        }
        factor += Rational(1);
    }
    return out;
}

/// S_m(base, k) = sum_{i=0}^{k-1} 1/(base+i)^m.
struct ShiftedSumSpec {
    Rational base;
    unsigned order = 1;
    unsigned length = 0;
};

inline Rational shifted_power_sum(const ShiftedSumSpec& spec) {
    Rational sum;
    Rational point = spec.base;
    for (unsigned i = 0; i < spec.length; ++i) {
        if (point.is_zero()) {
            throw ZeroDenominator("shifted sum hits base + " + std::to_string(i) + " = 0");
        }
        sum += inverse(pow(point, spec.order));
        point += Rational(1);
    }
    return sum;
}

/// H_k^{(m)} = sum_{j=1}^{k} 1/j^m.
inline Rational harmonic(unsigned k, unsigned m) {
    return shifted_power_sum({Rational(1), m, k});
}

/// x(x-1)...(x-k+1)/k!, defined for any rational x.
inline Rational binomial_general(const Rational& x, unsigned k) {
    Rational out(1);
    Rational factor = x;
    for (unsigned i = 1; i <= k; ++i) {
        out *= factor;
        out /= Rational(static_cast<long>(i));
        factor -= Rational(1);
    }
    return out;
}

/// Prefix table of harmonic numbers of one order, H_0^{(m)} ... H_len^{(m)}.
/// Grows on demand; not shared between threads.
class HarmonicTable {
public:
    explicit HarmonicTable(unsigned order) : order_(order), prefix_{Rational(0)} {}

    unsigned order() const { return order_; }

    Rational operator()(unsigned k) {
        while (prefix_.size() <= k) {
            const auto j = static_cast<long>(prefix_.size());
            prefix_.push_back(prefix_.back() + inverse(pow(Rational(j), order_)));
        }
        return prefix_[k];
    }

private:
    unsigned order_;
    std::vector<Rational> prefix_;
};

}  // namespace hypercong
