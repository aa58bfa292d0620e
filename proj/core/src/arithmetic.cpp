#include "lucky/arithmetic.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "lucky/formulas.hpp"
#include "lucky/ints.hpp"

namespace lucky {

bool in_star_domain(const LuckyTable& table, std::uint64_t v) {
    if (v == 0) return false;
    if (v == 2) return true;
    if (v > table.limit()) throw_needs_larger_table(v, "star domain query");
    return v >= 3 && table.contains(v);
}

std::uint64_t star(const LuckyTable& table, std::uint64_t l, std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "star requires n >= 1");
    if (!in_star_domain(table, l))
        throw Error(ErrorCode::invalid_operand,
                    std::to_string(l) + " is not a valid left operand of star");
    std::uint64_t index = l == 2 ? 1 : table.count_upto(l);
    return star_formula(table, index, n);
}

namespace {

// One elimination step: v (non-survivor, within the table) equals value*rank
// for exactly one sieve value. Walks the count recurrence testing whether the
// running rank of v is divisible by the current sieve value.
std::pair<std::uint64_t, std::uint64_t> eliminate(const LuckyTable& table, std::uint64_t v) {
    std::uint64_t rank = v;
    for (std::uint64_t i = 1;; ++i) {
        std::uint64_t value = table.l_index(i);
        if (rank % value == 0) return {value, rank / value};
        rank -= rank / value;
        // a non-survivor is always removed by a sieve value <= v <= limit,
        // so the walk cannot run off the table
        assert(value <= v);
    }
}

} // namespace

FactorChain factor(const LuckyTable& table, std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "factor requires n >= 1");
    if (n > table.limit()) throw_needs_larger_table(n, "factor");
    FactorChain chain;
    chain.value = n;
    if (table.contains(n)) {
        chain.elements.push_back(n);
        return chain;
    }
    std::uint64_t v = n;
    for (;;) {
        auto [value, rest] = eliminate(table, v);
        chain.elements.push_back(value);
        if (table.contains(rest)) { // includes rest == 1
            chain.elements.push_back(rest);
            return chain;
        }
        if (rest == 2) { // 2 = 2*1 stays a terminal 2 once a step was taken
            chain.elements.push_back(2);
            return chain;
        }
        v = rest;
    }
}

std::uint64_t eval_chain(const LuckyTable& table, std::span<const std::uint64_t> chain) {
    if (chain.empty()) throw Error(ErrorCode::invalid_chain, "empty chain");
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        if (!in_star_domain(table, chain[k]))
            throw Error(ErrorCode::invalid_chain,
                        "chain element " + std::to_string(chain[k]) +
                            " is not a valid left operand");
    std::uint64_t last = chain.back();
    if (last == 0) throw Error(ErrorCode::invalid_chain, "chain terminal 0");
    if (last != 2) {
        if (last > table.limit()) throw_needs_larger_table(last, "eval_chain");
        if (!table.contains(last))
            throw Error(ErrorCode::invalid_chain,
                        "chain terminal " + std::to_string(last) + " must be a survivor or 2");
    }
    std::uint64_t v = last;
    for (std::size_t k = chain.size() - 1; k-- > 0;) v = star(table, chain[k], v);
    return v;
}

std::uint64_t chain_length_expanded(const FactorChain& chain) {
    return chain.elements.size() + (chain.elements.back() == 2 ? 1 : 0);
}

bool in_s(const LuckyTable& table, std::uint64_t a) {
    FactorChain chain = factor(table, a);
    if (chain.elements.back() != 1) return true;
    return chain.elements.size() >= 2 && chain.elements[chain.elements.size() - 2] == 2;
}

std::uint64_t circ(const LuckyTable& table, std::uint64_t a, std::uint64_t b) {
    if (b == 0) throw Error(ErrorCode::invalid_argument, "circ requires b >= 1");
    FactorChain chain = factor(table, a);
    if (chain.elements.back() == 1) {
        if (chain.elements.size() >= 2 && chain.elements[chain.elements.size() - 2] == 2)
            chain.elements.pop_back(); // (..., 2, 1) composes through its terminal 2
        else
            throw Error(ErrorCode::undefined_composition,
                        std::to_string(a) + " o b is undefined (chain ends in a bare 1)");
    }
    std::uint64_t v = b;
    for (std::size_t k = chain.elements.size(); k-- > 0;) v = star(table, chain.elements[k], v);
    return v;
}

bool lucky_divides(const LuckyTable& table, std::uint64_t l, std::uint64_t n) {
    FactorChain chain = factor(table, n);
    return std::find(chain.elements.begin(), chain.elements.end(), l) != chain.elements.end();
}

std::uint64_t nu(const LuckyTable& table, std::uint64_t l, std::uint64_t n) {
    FactorChain chain = factor(table, n);
    return static_cast<std::uint64_t>(std::count(chain.elements.begin(), chain.elements.end(), l));
}

std::uint64_t omega_small(const LuckyTable& table, std::uint64_t n) {
    FactorChain chain = factor(table, n);
    std::vector<std::uint64_t> distinct(chain.elements);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    return distinct.size();
}

std::uint64_t omega_big(const LuckyTable& table, std::uint64_t n) {
    return factor(table, n).elements.size();
}

namespace {

// value of the slice [a, b] for every a <= b, column by column: the slice
// [a, b] extends [a+1, b] by one star application on the left.
std::vector<std::vector<std::uint64_t>> slice_values(const LuckyTable& table,
                                                     const std::vector<std::uint64_t>& elements) {
    std::size_t k = elements.size();
    std::vector<std::vector<std::uint64_t>> value(k, std::vector<std::uint64_t>(k, 0));
    for (std::size_t b = 0; b < k; ++b) {
        value[b][b] = elements[b];
        for (std::size_t a = b; a-- > 0;) value[a][b] = star(table, elements[a], value[a + 1][b]);
    }
    return value;
}

} // namespace

std::vector<DivisorTuple> divisor_tuples(const LuckyTable& table, std::uint64_t n) {
    FactorChain chain = factor(table, n);
    std::size_t k = chain.elements.size();
    auto value = slice_values(table, chain.elements);
    std::vector<DivisorTuple> out;
    out.reserve(k * (k + 1) / 2);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b)
            out.push_back(
                {{chain.elements.begin() + a, chain.elements.begin() + b + 1}, value[a][b]});
    return out;
}

std::vector<std::uint64_t> divisors(const LuckyTable& table, std::uint64_t n) {
    std::vector<DivisorTuple> tuples = divisor_tuples(table, n);
    std::vector<std::uint64_t> values;
    values.reserve(tuples.size());
    for (const DivisorTuple& t : tuples) values.push_back(t.value);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

std::uint64_t distinct_tuple_count(const LuckyTable& table, std::uint64_t n) {
    FactorChain chain = factor(table, n);
    std::size_t k = chain.elements.size();
    std::set<std::vector<std::uint64_t>> distinct;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b)
            distinct.emplace(chain.elements.begin() + a, chain.elements.begin() + b + 1);
    return distinct.size();
}

std::uint64_t sigma(const LuckyTable& table, std::uint64_t n, std::uint32_t i) {
    std::uint64_t sum = 0;
    for (std::uint64_t d : divisors(table, n)) sum = checked_add(sum, checked_pow(d, i));
    return sum;
}

bool relatively_lucky(const LuckyTable& table, std::uint64_t n, std::uint64_t m) {
    std::vector<std::uint64_t> dn = divisors(table, n);
    std::vector<std::uint64_t> dm = divisors(table, m);
    std::size_t a = 0, b = 0;
    while (a < dn.size() && b < dm.size()) {
        if (dn[a] == dm[b]) return false;
        dn[a] < dm[b] ? ++a : ++b;
    }
    return true;
}

std::uint64_t totient(const LuckyTable& table, std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "totient requires n >= 1");
    std::uint64_t count = 0;
    for (std::uint64_t m = 1; m < n; ++m)
        if (relatively_lucky(table, n, m)) ++count;
    return count;
}

bool omega_sum_expansion_check(const LuckyTable& table, std::uint64_t x) {
    if (x == 0) throw Error(ErrorCode::invalid_argument, "expansion check requires x >= 1");
    if (x > table.limit()) throw_needs_larger_table(x, "expansion check");

    // prefix[m] = sum over n <= m of the expanded chain length
    std::vector<std::uint64_t> prefix(x + 1, 0);
    std::uint64_t direct = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        direct += chain_length_expanded(factor(table, n));
        prefix[n] = direct;
    }

    // split side: every non-survivor <= x is removed by exactly one pass; the
    // pass with value l removes the numbers l*m for m up to floor(R/l), each
    // contributing 1 + length(m); survivors contribute 1 apiece.
    std::uint64_t split = 0;
    std::uint64_t term = x;
    for (std::uint64_t i = 1;; ++i) {
        std::uint64_t value = i == 1 ? 2 : (i <= table.count() ? table.nth_raw(i) : 0);
        if (value == 0 || value > term) break;
        std::uint64_t bound = term / value;
        split += bound + prefix[bound];
        term -= bound;
    }
    split += term; // term has stabilized at the survivor count
    return direct == split;
}

} // namespace lucky
