#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lucky/sieve.hpp"

// The star/circle algebra: unique sifting factorizations, divisor slices and
// the arithmetic functions built on them.
//
// Chains are the canonical factorizations n = a1*(a2*(...*ak)...) where every
// element but the last is a valid left operand (a survivor >= 3, or 2) and the
// last is a survivor or the literal 2. A remainder of 2 terminates the chain
// as-is rather than expanding to 2*1, so factor(4) = (2,2) and
// factor(22) = (2,3,2); the sole exception is factor(2) itself, which takes
// one elimination step and yields (2,1).

namespace lucky {

struct FactorChain {
    std::vector<std::uint64_t> elements;
    std::uint64_t value = 0;

    bool operator==(const FactorChain&) const = default;
};

/// True iff v may stand on the left of star: v == 2 or v is a survivor >= 3.
bool in_star_domain(const LuckyTable& table, std::uint64_t v);

/// l * n: the n-th number removed by sieve value l. Computed through the
/// nested-ceiling formula; agrees with star_formula and with literal stage
/// enumeration.
std::uint64_t star(const LuckyTable& table, std::uint64_t l, std::uint64_t n);

/// Canonical chain of n (see the header comment for the terminal-2 rule).
FactorChain factor(const LuckyTable& table, std::uint64_t n);

/// Right-fold of star over an explicit chain; inverse of factor on canonical
/// chains. Throws invalid_chain on malformed input.
std::uint64_t eval_chain(const LuckyTable& table, std::span<const std::uint64_t> chain);

/// Chain length with a terminal 2 expanded back to 2*1. This is the length
/// convention under which the partition identity below is exact.
std::uint64_t chain_length_expanded(const FactorChain& chain);

/// Membership in S, the domain of the circle operator: the chain either does
/// not end in 1, or ends with the pair (2, 1).
bool in_s(const LuckyTable& table, std::uint64_t a);

/// a o b: recompose a's chain on top of b. A trailing (2,1) collapses to a
/// terminal 2 first. Throws undefined_composition when a is outside S
/// (in particular for a = 1).
std::uint64_t circ(const LuckyTable& table, std::uint64_t a, std::uint64_t b);

/// True iff l appears among the chain elements of n.
bool lucky_divides(const LuckyTable& table, std::uint64_t l, std::uint64_t n);

/// Multiplicity of l in the chain of n.
std::uint64_t nu(const LuckyTable& table, std::uint64_t l, std::uint64_t n);

/// Distinct chain elements / chain length.
std::uint64_t omega_small(const LuckyTable& table, std::uint64_t n);
std::uint64_t omega_big(const LuckyTable& table, std::uint64_t n);

/// One contiguous slice of a chain together with its composed value.
struct DivisorTuple {
    std::vector<std::uint64_t> slice;
    std::uint64_t value = 0;
};

/// All nonempty contiguous slices of factor(n), ordered by start position
/// then length. Slices repeat when the chain has repeated segments.
std::vector<DivisorTuple> divisor_tuples(const LuckyTable& table, std::uint64_t n);

/// Sorted distinct slice values; the divisors of n under the circle operator.
std::vector<std::uint64_t> divisors(const LuckyTable& table, std::uint64_t n);

/// Number of distinct slices counted as tuples (not as integer values); the
/// quantity the divisor-count bounds speak about.
std::uint64_t distinct_tuple_count(const LuckyTable& table, std::uint64_t n);

/// Sum of d^i over the distinct divisor values of n. i = 0 counts them.
std::uint64_t sigma(const LuckyTable& table, std::uint64_t n, std::uint32_t i);

/// No common divisor value between n and m.
bool relatively_lucky(const LuckyTable& table, std::uint64_t n, std::uint64_t m);

/// Count of m in [1, n-1] relatively lucky to n.
std::uint64_t totient(const LuckyTable& table, std::uint64_t n);

/// Checks the partition identity for the summatory chain length up to x:
/// direct summation against the stage-wise split plus the survivor count.
/// Uses the expanded length convention (terminal 2 counted as 2*1).
bool omega_sum_expansion_check(const LuckyTable& table, std::uint64_t x);

} // namespace lucky
