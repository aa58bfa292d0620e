#include <doctest.h>

#include <random>

#include "lucky/arithmetic.hpp"
#include "lucky/formulas.hpp"
#include "lucky/sieve.hpp"

// Randomized cross-checks with a fixed seed: uniform samples over ranges the
// exhaustive sweeps do not reach.

using namespace lucky;

namespace {

const LuckyTable& table_2e5() {
    static LuckyTable table = LuckyTable::sieve_upto(200000);
    return table;
}

} // namespace

TEST_CASE("random limits: engines and stage counts agree") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> dist(1, 150000);
    for (int trial = 0; trial < 25; ++trial) {
        std::uint64_t limit = dist(rng);
        LuckyTable compact = LuckyTable::sieve_upto(limit, SieveEngine::compact);
        LuckyTable indexed = LuckyTable::sieve_upto(limit, SieveEngine::indexed);
        REQUIRE(compact.count() == indexed.count());
        CHECK(std::equal(compact.survivors().begin(), compact.survivors().end(),
                         indexed.survivors().begin()));
        CHECK(compact.stages_applied() == indexed.stages_applied());
    }
}

TEST_CASE("random x: formulas match the table") {
    const LuckyTable& t = table_2e5();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> xs(1, t.limit());
    for (int trial = 0; trial < 4000; ++trial) {
        std::uint64_t x = xs(rng);
        CHECK(count_formula(t, x) == t.count_upto(x));
    }
    std::uniform_int_distribution<std::uint64_t> ns(2, t.count());
    for (int trial = 0; trial < 4000; ++trial) {
        std::uint64_t n = ns(rng);
        std::uint64_t c = nth_formula_ceil(t, n);
        CHECK(c == nth_formula_floor(t, n));
        CHECK(c == t.l_index(n));
        CHECK(n_sequence(t, n).terms.back() == c);
    }
}

TEST_CASE("random n: chains round-trip and respect the length bound") {
    const LuckyTable& t = table_2e5();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> ns(1, t.limit());
    for (int trial = 0; trial < 4000; ++trial) {
        std::uint64_t n = ns(rng);
        FactorChain chain = factor(t, n);
        CHECK(eval_chain(t, chain.elements) == n);
        CHECK(static_cast<double>(chain.elements.size()) <=
              std::log2(static_cast<double>(n)) + 1.0);
        // head step agrees with the star operator
        if (chain.elements.size() >= 2) {
            std::vector<std::uint64_t> rest(chain.elements.begin() + 1, chain.elements.end());
            CHECK(star(t, chain.elements.front(), eval_chain(t, rest)) == n);
        }
    }
}

TEST_CASE("random pairs: star stays within the non-survivors and grows") {
    const LuckyTable& t = table_2e5();
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::uint64_t> is(1, 300);
    std::uniform_int_distribution<std::uint64_t> ns(1, 300);
    for (int trial = 0; trial < 2000; ++trial) {
        std::uint64_t i = is(rng), n = ns(rng);
        std::uint64_t s = star_formula(t, i, n);
        CHECK(s >= t.l_index(i) * n);
        if (s <= t.limit()) {
            CHECK_FALSE(t.contains(s)); // star images are exactly the removed numbers
            FactorChain chain = factor(t, s);
            CHECK(chain.elements.front() == t.l_index(i));
        }
    }
}
