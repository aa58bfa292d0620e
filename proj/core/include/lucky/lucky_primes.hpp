#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lucky/arithmetic.hpp"
#include "lucky/sieve.hpp"

// Lucky primes (numbers that are both prime and survivors), the mixed
// multiplicative/star factorization into lucky-prime leaves, and the
// fractional order measure derived from it.

namespace lucky {

bool is_lucky_prime(const LuckyTable& table, std::uint64_t n);

/// Expression tree over two operations: ordinary products of powers and star
/// chains. Leaves are lucky primes, 1, or the irreducible 2 (2 is prime but
/// not a survivor, and its own chain is 2*1, so it terminates chains as a
/// bare leaf exactly the way it is displayed).
struct MixedExpr {
    enum class Kind { lucky_prime, one, two, product, star_chain };

    Kind kind = Kind::one;
    std::uint64_t value = 0; // integer this node represents

    std::vector<std::pair<MixedExpr, std::uint32_t>> factors; // product terms with exponents
    std::vector<MixedExpr> chain;                             // star chain elements

    bool operator==(const MixedExpr&) const = default;
};

enum class MixedStart { prime_first, lucky_first };

struct MixedOptions {
    std::uint32_t depth_cap = 64;
};

/// Factor n down to lucky-prime leaves under the strict alternation rule:
/// primes are split through their chains, survivors through their prime-power
/// factorizations, nothing else. The two start modes give the (at most) two
/// representations. Throws non_terminating if the depth cap is hit.
MixedExpr mixed_factor(const LuckyTable& table, std::uint64_t n, MixedStart start,
                       const MixedOptions& options = {});

/// Recomputes the integer a MixedExpr stands for, bottom-up.
std::uint64_t eval_mixed(const LuckyTable& table, const MixedExpr& expr);

/// Display form: star chains as l1*(l2*(...*lk)...), products juxtaposed with
/// parentheses, exponents as ^a. mixed_factor(77, prime_first) renders as
/// "7(3*(2*1))" and the lucky-first form as "3*13".
std::string render_mixed(const MixedExpr& expr);

/// Fractional order 1/reciprocal; lucky primes have reciprocal 1. Absent
/// value means the order is undefined (no orderable factors, a cycle, or the
/// depth cap).
struct OrderValue {
    std::optional<std::uint64_t> reciprocal;

    bool defined() const { return reciprocal.has_value(); }
    bool operator==(const OrderValue&) const = default;
};

struct OrderOptions {
    bool use_cache = true;
    std::uint32_t depth_cap = 64;
};

/// Memoized evaluator for the order recursion. Only primes and survivors are
/// in the domain; chain terminators 1 and 2 are order-neutral and are skipped
/// when taking the maximum over factors.
class OrderCalculator {
  public:
    explicit OrderCalculator(const LuckyTable& table, OrderOptions options = {});

    /// Throws invalid_argument unless n is prime or a survivor.
    OrderValue ord(std::uint64_t n);

  private:
    std::optional<std::uint64_t> recurse(std::uint64_t n, std::uint32_t depth,
                                         std::vector<std::uint64_t>& active);

    const LuckyTable& table_;
    OrderOptions options_;
    std::unordered_map<std::uint64_t, std::optional<std::uint64_t>> cache_;
};

/// Convenience wrapper around OrderCalculator for one-off queries.
OrderValue ord(const LuckyTable& table, std::uint64_t n, OrderOptions options = {});

/// All primes-or-survivors <= limit whose order is exactly 1/k, ascending.
std::vector<std::uint64_t> enumerate_order(const LuckyTable& table, std::uint64_t limit,
                                           std::uint64_t k);

} // namespace lucky
