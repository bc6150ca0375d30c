// Exception types shared by every hypercong component.
#pragma once

#include <stdexcept>
#include <string>

namespace hypercong {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HYPERCONG_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

HYPERCONG_DEFINE_ERROR(ZeroDenominator);
HYPERCONG_DEFINE_ERROR(NotPrime);
HYPERCONG_DEFINE_ERROR(NotPIntegral);
HYPERCONG_DEFINE_ERROR(CapExceeded);
HYPERCONG_DEFINE_ERROR(PrecisionCapExceeded);
HYPERCONG_DEFINE_ERROR(DivByNonUnit);
HYPERCONG_DEFINE_ERROR(CapMismatch);
HYPERCONG_DEFINE_ERROR(ZeroLowerFactor);
HYPERCONG_DEFINE_ERROR(NotTerminating);
HYPERCONG_DEFINE_ERROR(PreconditionViolated);
HYPERCONG_DEFINE_ERROR(ConfigError);

#undef HYPERCONG_DEFINE_ERROR

}  // namespace hypercong
