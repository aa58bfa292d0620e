#include "lucky/formulas.hpp"

#include "lucky/ints.hpp"

namespace lucky {

namespace {

// Sieve value l_i, or 0 when i runs past the table. A zero return is only a
// valid stop when the current term already fits inside the table (every
// uncovered sieve value then exceeds it).
std::uint64_t sieve_value_or_zero(const LuckyTable& table, std::uint64_t i) {
    if (i == 1) return 2;
    if (i <= table.count()) return table.nth_raw(i);
    return 0;
}

} // namespace

RTrace r_sequence(const LuckyTable& table, std::uint64_t x) {
    if (x == 0) throw Error(ErrorCode::invalid_argument, "r_sequence requires x >= 1");
    if (x > table.limit()) throw_needs_larger_table(x, "r_sequence");
    RTrace trace;
    trace.x = x;
    trace.terms.push_back(x);
    std::uint64_t term = x;
    for (std::uint64_t i = 1;; ++i) {
        std::uint64_t value = sieve_value_or_zero(table, i);
        if (value == 0) {
            // term <= x <= limit, so the next sieve value (> limit) exceeds it
            break;
        }
        if (value > term) break;
        term -= term / value;
        trace.terms.push_back(term);
    }
    trace.stabilized_at = trace.terms.size();
    return trace;
}

std::uint64_t count_formula(const LuckyTable& table, std::uint64_t x) {
    return r_sequence(table, x).final_count();
}

namespace {

// Shared skeleton of the two n-th value evaluations: start at n and multiply
// through the beta sieve values <= n, largest first.
template <typename Step>
std::uint64_t nth_descend(const LuckyTable& table, std::uint64_t n, Step step) {
    if (n < 2)
        throw Error(ErrorCode::invalid_argument,
                    "n-th value formulas are defined for n >= 2; take l_index(1) from the table");
    if (n > table.limit()) throw_needs_larger_table(n, "n-th value formula");
    std::uint64_t beta = table.count_upto(n);
    std::uint64_t y = n;
    for (std::uint64_t j = beta; j >= 1; --j) y = step(y, table.l_index(j));
    return y;
}

} // namespace

std::uint64_t nth_formula_ceil(const LuckyTable& table, std::uint64_t n) {
    return nth_descend(table, n, [](std::uint64_t y, std::uint64_t l) {
        return ceil_mul_div_minus_one(y, l, l - 1); // ceil(y * l/(l-1) - 1)
    });
}

std::uint64_t nth_formula_floor(const LuckyTable& table, std::uint64_t n) {
    return nth_descend(table, n, [](std::uint64_t y, std::uint64_t l) {
        return floor_mul_minus_one_div(y, l, l - 1); // floor((y*l - 1)/(l-1))
    });
}

NSequence n_sequence(const LuckyTable& table, std::uint64_t n) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "n_sequence requires n >= 2");
    if (n > table.limit()) throw_needs_larger_table(n, "n_sequence");
    NSequence seq;
    seq.n = n;
    seq.beta = table.count_upto(n);
    seq.terms.reserve(seq.beta + 1);
    seq.terms.push_back(n);
    std::uint64_t y = n;
    for (std::uint64_t j = seq.beta; j >= 1; --j) {
        y = floor_mul_minus_one_div(y, table.l_index(j), table.l_index(j) - 1);
        seq.terms.push_back(y);
    }
    return seq;
}

std::uint64_t star_formula(const LuckyTable& table, std::uint64_t i, std::uint64_t n) {
    if (i == 0 || n == 0)
        throw Error(ErrorCode::invalid_argument, "star_formula requires i >= 1 and n >= 1");
    if (i != 1 && i > table.count())
        throw_needs_larger_table(table.limit() * 2, "star_formula: sieve value index beyond table");
    std::uint64_t y = checked_mul(table.l_index(i), n);
    for (std::uint64_t j = i - 1; j >= 1; --j)
        y = ceil_mul_div_minus_one(y, table.l_index(j), table.l_index(j) - 1);
    return y;
}

} // namespace lucky
