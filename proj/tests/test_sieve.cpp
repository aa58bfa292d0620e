#include <doctest.h>

#include <set>
#include <sstream>

#include "lucky/sieve.hpp"
#include "oracle_helpers.hpp"

using namespace lucky;

namespace {

const LuckyTable& table_1e5() {
    static LuckyTable table = LuckyTable::sieve_upto(100000);
    return table;
}

const std::vector<std::uint64_t> golden_63 = {1,  3,  7,  9,  13, 15, 21, 25,
                                              31, 33, 37, 43, 49, 51, 63};

} // namespace

TEST_CASE("sieve_upto reproduces the leading survivors") {
    for (SieveEngine engine : {SieveEngine::compact, SieveEngine::indexed}) {
        LuckyTable t = LuckyTable::sieve_upto(63, engine);
        std::vector<std::uint64_t> got(t.survivors().begin(), t.survivors().end());
        CHECK(got == golden_63);
        CHECK(t.count() == 15);
    }
}

TEST_CASE("sieve_upto tiny limits") {
    LuckyTable t1 = LuckyTable::sieve_upto(1);
    CHECK(t1.count() == 1);
    CHECK(t1.nth_raw(1) == 1);
    LuckyTable t2 = LuckyTable::sieve_upto(2);
    CHECK(t2.count() == 1);
    LuckyTable t3 = LuckyTable::sieve_upto(3);
    CHECK(t3.count() == 2);
    CHECK(t3.nth_raw(2) == 3);
    CHECK_THROWS_WITH_AS(LuckyTable::sieve_upto(0), doctest::Contains("limit"), Error);
}

TEST_CASE("engines agree with each other and with the literal oracle") {
    lucky_test::EliminationOracle oracle(5000);
    LuckyTable compact = LuckyTable::sieve_upto(5000, SieveEngine::compact);
    LuckyTable indexed = LuckyTable::sieve_upto(5000, SieveEngine::indexed);
    REQUIRE(compact.count() == indexed.count());
    REQUIRE(compact.count() == oracle.survivors().size());
    for (std::size_t i = 0; i < compact.count(); ++i) {
        CHECK(compact.survivors()[i] == indexed.survivors()[i]);
        CHECK(compact.survivors()[i] == oracle.survivors()[i]);
    }
    CHECK(compact.stages_applied() == indexed.stages_applied());
}

TEST_CASE("engines agree at 1e5") {
    LuckyTable compact = LuckyTable::sieve_upto(100000, SieveEngine::compact);
    const LuckyTable& indexed = table_1e5();
    REQUIRE(compact.count() == indexed.count());
    CHECK(std::equal(compact.survivors().begin(), compact.survivors().end(),
                     indexed.survivors().begin()));
}

TEST_CASE("stabilization: one further pass removes nothing") {
    for (std::uint64_t limit : {1ULL, 2ULL, 63ULL, 1000ULL, 54321ULL}) {
        LuckyTable t = LuckyTable::sieve_upto(limit);
        // the next sieve value is the (stages+1)-th survivor; a pass with it
        // would delete floor(count / value) members
        std::uint64_t next_pass = t.stages_applied() + 1;
        std::uint64_t next_value =
            next_pass == 1 ? 2 : (next_pass <= t.count() ? t.nth_raw(next_pass) : t.limit() + 1);
        CHECK(t.count() / next_value == 0);
    }
}

TEST_CASE("count_upto frozen values and properties") {
    const LuckyTable& t = table_1e5();
    CHECK(t.count_upto(10) == 4);
    CHECK(t.count_upto(33) == 10);
    CHECK(t.count_upto(1) == 1);
    CHECK(t.count_upto(100) == 23);
    CHECK(t.count_upto(1000) == 153);
    CHECK(t.count_upto(100000) == 8772);
    CHECK_THROWS_AS((void)t.count_upto(100001), Error);

    // nondecreasing, +1 exactly at survivors, matches a linear scan
    std::uint64_t linear = 0;
    std::size_t cursor = 0;
    for (std::uint64_t x = 1; x <= 2000; ++x) {
        if (cursor < t.count() && t.survivors()[cursor] == x) {
            ++linear;
            ++cursor;
        }
        CHECK(t.count_upto(x) == linear);
    }
}

TEST_CASE("presence bitmap matches the survivor list") {
    LuckyTable t = LuckyTable::sieve_upto(3000);
    std::set<std::uint64_t> members(t.survivors().begin(), t.survivors().end());
    for (std::uint64_t v = 1; v <= 3000; ++v) CHECK(t.contains(v) == (members.count(v) != 0));
    CHECK_THROWS_AS((void)t.contains(0), Error);
    try {
        (void)t.contains(3001);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::needs_larger_table);
    }
}

TEST_CASE("nth_raw and l_index") {
    const LuckyTable& t = table_1e5();
    CHECK(t.nth_raw(1) == 1);
    CHECK(t.nth_raw(4) == 9);
    CHECK(t.nth_raw(15) == 63);
    CHECK(t.l_index(1) == 2);
    CHECK(t.l_index(2) == 3);
    CHECK(t.l_index(3) == 7);
    CHECK(t.l_index(8) == 25);
    std::vector<std::uint64_t> head;
    for (std::uint64_t n = 1; n <= 8; ++n) head.push_back(t.l_index(n));
    CHECK(head == std::vector<std::uint64_t>{2, 3, 7, 9, 13, 15, 21, 25});
    CHECK_THROWS_AS((void)t.nth_raw(0), Error);
    CHECK_THROWS_AS((void)t.nth_raw(t.count() + 1), Error);
}

TEST_CASE("rank and selection are inverse") {
    const LuckyTable& t = table_1e5();
    for (std::uint64_t k = 1; k <= t.count(); k += 97) CHECK(t.count_upto(t.nth_raw(k)) == k);
    for (std::uint64_t x = 1; x <= 100000; x += 383) {
        std::uint64_t c = t.count_upto(x);
        CHECK(t.nth_raw(c) <= x);
    }
}

TEST_CASE("stage sets") {
    CHECK(stage_set(9, 1).members == std::vector<std::uint64_t>{1, 3, 5, 7, 9});
    CHECK(stage_set(9, 2).members == std::vector<std::uint64_t>{1, 3, 7, 9});
    CHECK(stage_set(6, 0).members == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});

    // A_{i+1} is A_i with every l_{i+1}-th member removed
    StagePool pool(2000);
    const LuckyTable& t = table_1e5();
    for (std::uint64_t i = 0; i + 1 <= pool.effective_stages(); ++i) {
        const StageSet& cur = pool.stage(i);
        const StageSet& next = pool.stage(i + 1);
        std::uint64_t value = t.l_index(i + 1);
        std::vector<std::uint64_t> expect;
        for (std::size_t idx = 0; idx < cur.members.size(); ++idx)
            if ((idx + 1) % value != 0) expect.push_back(cur.members[idx]);
        CHECK(next.members == expect);
    }
}

TEST_CASE("rank_in_stage") {
    CHECK(rank_in_stage(30, 0, 6) == 6);
    CHECK(rank_in_stage(30, 1, 5) == 3);
    CHECK(rank_in_stage(30, 2, 19) == 7);
    CHECK_THROWS_AS((void)rank_in_stage(30, 1, 4), Error); // 4 is not in stage 1
}

TEST_CASE("cache file round trip is byte exact") {
    LuckyTable t = LuckyTable::sieve_upto(63);
    std::ostringstream first;
    t.save(first);
    CHECK(first.str().substr(0, 29) == "luckytable v1 limit=63 count=");
    CHECK(first.str().back() == '\n');

    std::istringstream in(first.str());
    LuckyTable loaded = LuckyTable::load(in);
    CHECK(loaded.limit() == 63);
    CHECK(std::equal(loaded.survivors().begin(), loaded.survivors().end(),
                     t.survivors().begin(), t.survivors().end()));
    CHECK(loaded.count_upto(10) == 4);

    std::ostringstream second;
    loaded.save(second);
    CHECK(first.str() == second.str());
}

TEST_CASE("cache loader rejects corrupt input") {
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS((void)LuckyTable::load(in), Error);
    };
    reject("");
    reject("luckytable v2 limit=9 count=2\n1\n3\n");
    reject("luckytable v1 limit=9 count=2\n3\n1\n");     // not increasing / first != 1
    reject("luckytable v1 limit=9 count=2\n1\n11\n");    // beyond limit
    reject("luckytable v1 limit=9 count=3\n1\n3\n");     // truncated
    reject("luckytable v1 limit=9 count=2\n1\n3\n\n");   // trailing blank line
    reject("luckytable v1 limit=9 count=2\n1\nx\n");     // junk entry
    reject("luckytable v1 limit=9 count=99\n1\n3\n");    // count beyond the limit
}

TEST_CASE("growing table") {
    GrowingTable g(16);
    CHECK(g.current().limit() == 16);
    g.at_least(100);
    CHECK(g.current().limit() >= 100);
    g.with_count(50);
    CHECK(g.current().count() >= 50);
    std::uint64_t value = g.retrying([&](const LuckyTable& t) {
        if (t.limit() < 5000) throw_needs_larger_table(5000, "test");
        return t.count_upto(5000);
    });
    CHECK(value == g.current().count_upto(5000));
}
