#include <doctest.h>

#include "lucky/formulas.hpp"
#include "lucky/sieve.hpp"
#include "oracle_helpers.hpp"

using namespace lucky;

namespace {

const LuckyTable& table_1e5() {
    static LuckyTable table = LuckyTable::sieve_upto(100000);
    return table;
}

} // namespace

TEST_CASE("r_sequence traces") {
    const LuckyTable& t = table_1e5();
    RTrace r10 = r_sequence(t, 10);
    CHECK(r10.terms == std::vector<std::uint64_t>{10, 5, 4});
    CHECK(r10.final_count() == 4);
    CHECK(r10.stabilized_at == 3);

    RTrace r1 = r_sequence(t, 1);
    CHECK(r1.terms == std::vector<std::uint64_t>{1});
    CHECK(r1.final_count() == 1);

    CHECK(r_sequence(t, 6).terms == std::vector<std::uint64_t>{6, 3, 2});
    CHECK(r_sequence(t, 100).final_count() == t.count_upto(100));

    // nonincreasing terms, and the final value is the true count
    for (std::uint64_t x : {2ULL, 33ULL, 200ULL, 9999ULL}) {
        RTrace r = r_sequence(t, x);
        for (std::size_t i = 1; i < r.terms.size(); ++i) CHECK(r.terms[i] <= r.terms[i - 1]);
        CHECK(r.final_count() == t.count_upto(x));
        // applied passes never exceed the count-of-count bound by more than one
        std::uint64_t nominal = t.count_upto(t.count_upto(x));
        CHECK(r.passes() <= nominal + 1);
    }
}

TEST_CASE("count_formula equals the sieve count") {
    const LuckyTable& t = table_1e5();
    CHECK(count_formula(t, 10) == 4);
    CHECK(count_formula(t, 63) == 15);
    CHECK(count_formula(t, 33) == 10);
    for (std::uint64_t x = 1; x <= 3000; ++x) CHECK(count_formula(t, x) == t.count_upto(x));
    CHECK_THROWS_AS((void)count_formula(t, 0), Error);
    CHECK_THROWS_AS((void)count_formula(t, t.limit() + 1), Error);
}

TEST_CASE("nth formulas reproduce the worked steps") {
    const LuckyTable& t = table_1e5();
    CHECK(nth_formula_ceil(t, 3) == 7);
    CHECK(nth_formula_ceil(t, 2) == 3);
    CHECK(nth_formula_floor(t, 8) == 25);
    CHECK(nth_formula_floor(t, 3) == 7);
    CHECK_THROWS_AS((void)nth_formula_ceil(t, 1), Error);
    CHECK_THROWS_AS((void)nth_formula_floor(t, 1), Error);
}

TEST_CASE("nth formulas agree with each other and the table") {
    const LuckyTable& t = table_1e5();
    for (std::uint64_t n = 2; n <= 3000; ++n) {
        std::uint64_t c = nth_formula_ceil(t, n);
        CHECK(c == nth_formula_floor(t, n));
        CHECK(c == t.l_index(n));
    }
}

TEST_CASE("n_sequence traces") {
    const LuckyTable& t = table_1e5();
    CHECK(n_sequence(t, 8).terms == std::vector<std::uint64_t>{8, 9, 13, 25});
    CHECK(n_sequence(t, 2).terms == std::vector<std::uint64_t>{2, 3});
    CHECK(n_sequence(t, 3).terms == std::vector<std::uint64_t>{3, 4, 7});
    for (std::uint64_t n = 2; n <= 500; ++n) {
        NSequence seq = n_sequence(t, n);
        CHECK(seq.beta == t.count_upto(n));
        CHECK(seq.terms.size() == seq.beta + 1);
        CHECK(seq.terms.back() == t.l_index(n));
        for (std::size_t i = 1; i < seq.terms.size(); ++i)
            CHECK(seq.terms[i] > seq.terms[i - 1]);
    }
}

TEST_CASE("star_formula examples and stage oracle") {
    const LuckyTable& t = table_1e5();
    CHECK(star_formula(t, 1, 3) == 6);
    CHECK(star_formula(t, 2, 1) == 5);
    CHECK(star_formula(t, 3, 1) == 19);

    // literal Def-style oracle: l_i * n is the (l_i n)-th member of stage i-1
    StagePool pool(4000);
    for (std::uint64_t i = 1; i <= 5; ++i) {
        std::uint64_t value = t.l_index(i);
        for (std::uint64_t n = 1; n <= 12; ++n) {
            std::uint64_t rank = value * n;
            const StageSet& stage = pool.stage(i - 1);
            if (rank > stage.members.size()) continue;
            CHECK(star_formula(t, i, n) == stage.members[rank - 1]);
        }
    }
}

TEST_CASE("star_formula growth properties") {
    const LuckyTable& t = table_1e5();
    for (std::uint64_t i = 1; i <= 40; ++i) {
        std::uint64_t value = t.l_index(i);
        std::uint64_t prev = 0;
        for (std::uint64_t n = 1; n <= 40; ++n) {
            std::uint64_t s = star_formula(t, i, n);
            CHECK(s >= value * n);
            if (i == 1) CHECK(s == value * n);
            if (i > 1 && n == 1) CHECK(s > value);
            CHECK(s > prev); // strictly increasing in n
            prev = s;
        }
    }
}

TEST_CASE("formula error paths") {
    const LuckyTable& t = table_1e5();
    CHECK_THROWS_AS((void)star_formula(t, 0, 1), Error);
    CHECK_THROWS_AS((void)star_formula(t, 1, 0), Error);
    // index past the table
    try {
        (void)star_formula(t, t.count() + 1, 1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::needs_larger_table);
        CHECK(e.required_limit() > t.limit());
    }
    // overflow reporting
    CHECK_THROWS_AS((void)star_formula(t, 2, UINT64_MAX / 2), Error);
    try {
        (void)star_formula(t, 3, UINT64_MAX / 6);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::overflow);
    }
}
