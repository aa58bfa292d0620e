#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lucky {

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Prime factorization by trial division (adequate at desk scale).
/// Returns (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, std::uint32_t>> prime_factorize(std::uint64_t n);

} // namespace lucky
