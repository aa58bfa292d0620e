#pragma once

#include <cstdint>
#include <vector>

#include "lucky/sieve.hpp"

// Closed-form evaluations over a LuckyTable. Everything here is exact
// unsigned integer arithmetic; results must match the sieve queries they
// mirror bit for bit. All sequences are indexed through l_index (l_1 = 2).

namespace lucky {

/// Trace of the survivor-count recurrence at x:
///   R(1) = floor(x),  R(i+1) = R(i) - floor(R(i) / l_i),
/// iterated while l_i <= R(i). terms[j] holds R(j+1); the final term is the
/// lucky count up to x. stabilized_at is the 1-based index of the first term
/// the sequence never moves from again.
struct RTrace {
    std::uint64_t x = 0;
    std::vector<std::uint64_t> terms;
    std::uint64_t stabilized_at = 0;

    std::uint64_t final_count() const { return terms.back(); }
    /// Number of sieve values actually applied (terms.size() - 1).
    std::uint64_t passes() const { return terms.size() - 1; }
};

RTrace r_sequence(const LuckyTable& table, std::uint64_t x);

/// Count of lucky numbers <= x via the nested-ceiling product; equals
/// table.count_upto(x) exactly.
std::uint64_t count_formula(const LuckyTable& table, std::uint64_t x);

/// n-th value of the l_index sequence by the ceiling-form recurrence,
/// starting from n and descending through the sieve values <= n.
/// Defined for n >= 2 (l_index(1) = 2 comes straight from the table).
std::uint64_t nth_formula_ceil(const LuckyTable& table, std::uint64_t n);

/// Floor-form twin of nth_formula_ceil; must agree with it exactly.
std::uint64_t nth_formula_floor(const LuckyTable& table, std::uint64_t n);

/// Full floor-form trace: terms[0] = n, each step multiplies through one
/// sieve value, terms[beta] is the n-th l_index value.
struct NSequence {
    std::uint64_t n = 0;
    std::uint64_t beta = 0; // count of sieve values applied = count_upto(n)
    std::vector<std::uint64_t> terms;
};

NSequence n_sequence(const LuckyTable& table, std::uint64_t n);

/// Value of the star operator l_i * n (the (l_i n)-th member of stage i-1)
/// evaluated by the nested-ceiling chain from l_i * n down through l_1.
std::uint64_t star_formula(const LuckyTable& table, std::uint64_t i, std::uint64_t n);

} // namespace lucky
