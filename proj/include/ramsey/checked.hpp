#pragma once

#include <cstdint>

#include "ramsey/errors.hpp"

namespace ramsey {

// All bound arithmetic runs through these.  The largest value the recursion
// produces in normal use is ~6.1e8, but user queries are unrestricted and a
// wrapped product would silently corrupt a derivation, so every add/sub/mul
// is checked.
using Value = std::int64_t;

inline Value checked_add(Value a, Value b) {
    Value out;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("integer overflow in addition");
    return out;
}

inline Value checked_sub(Value a, Value b) {
    Value out;
    if (__builtin_sub_overflow(a, b, &out))
        throw OverflowError("integer overflow in subtraction");
    return out;
}

inline Value checked_mul(Value a, Value b) {
    Value out;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("integer overflow in multiplication");
    return out;
}

// Nonnegative remainder mod 3, defined for the positive values the engine
// produces; used by the mod-3 rule and the certificate verifier.
inline int mod3(Value a) {
    return static_cast<int>(((a % 3) + 3) % 3);
}

} // namespace ramsey
