#pragma once

#include <cstdint>

#include "lucky/errors.hpp"

// Exact unsigned 64-bit helpers. Everything here either returns the exact
// integer result or throws Error(overflow); no silent wraparound.

namespace lucky {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorCode::overflow, "64-bit overflow in multiplication");
    return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorCode::overflow, "64-bit overflow in addition");
    return r;
}

// ceil(a / b) for b >= 1, without overflow on a + b - 1.
inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
    return a / b + (a % b != 0);
}

// ceil(a * m / d) - 1, the step used by the nested-ceiling evaluations.
inline std::uint64_t ceil_mul_div_minus_one(std::uint64_t a, std::uint64_t m, std::uint64_t d) {
    return ceil_div(checked_mul(a, m), d) - 1;
}

// floor((a * m - 1) / d), the floor-form twin of the step above.
inline std::uint64_t floor_mul_minus_one_div(std::uint64_t a, std::uint64_t m, std::uint64_t d) {
    return (checked_mul(a, m) - 1) / d;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

} // namespace lucky
