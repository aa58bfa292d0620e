#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lucky/analysis.hpp"
#include "lucky/sieve.hpp"

using namespace lucky;

namespace {

const LuckyTable& table_2e5() {
    static LuckyTable table = LuckyTable::sieve_upto(200000);
    return table;
}

} // namespace

TEST_CASE("bertrand sweep") {
    const LuckyTable& t = table_2e5();
    SweepReport r = verify_bertrand(t, 1000);
    CHECK(r.passed());
    CHECK(r.counterexamples.empty());
    // spot instances: 7 in [4,8], 33 in [33,66]
    CHECK(t.count_upto(8) - t.count_upto(3) >= 1);
    CHECK(t.count_upto(66) - t.count_upto(32) >= 1);
    CHECK_THROWS_AS((void)verify_bertrand(t, 150000), Error); // table too small
}

TEST_CASE("sandwich bounds sweep") {
    const LuckyTable& t = table_2e5();
    SweepReport r = sandwich_bounds_check(t, 3000);
    CHECK(r.passed());

    // the x = 10 instance by hand: two applied factors, product 1/3,
    // 10/3 <= 4 < 10/3 + 2
    CHECK(t.count_upto(10) == 4);

    // boundary cases where the applied-factor count exceeds the nominal one
    SweepReport tight = sandwich_bounds_check(t, 25);
    CHECK(tight.passed()); // includes x = 5, 6, 19, 20
}

TEST_CASE("gap records") {
    const LuckyTable& t = table_2e5();
    GapStats stats = gap_stats(t, 1000);
    REQUIRE(stats.records.size() == 999);
    CHECK(stats.records[0].n == 2);
    CHECK(stats.records[0].l_n == 3);
    CHECK(stats.records[0].l_next == 7);
    CHECK(stats.records[0].gap == 4);
    CHECK(stats.records[0].ratio == doctest::Approx(2.20332).epsilon(1e-4));
    const GapRecord& r8 = stats.records[6];
    CHECK(r8.n == 8);
    CHECK(r8.l_n == 25);
    CHECK(r8.gap == 6);
    CHECK(r8.ratio == doctest::Approx(0.668851).epsilon(1e-4));
    for (const GapRecord& rec : stats.records) {
        CHECK(rec.gap >= 2);
        CHECK(rec.ratio > 0.0);
    }
    CHECK(stats.summary.max_ratio > 0.0);
    CHECK(stats.summary.witness_n == 2); // the early gap 3 -> 7 dominates
    CHECK(stats.summary.checkpoints.back().first == 1000);
}

TEST_CASE("gap csv stream") {
    const LuckyTable& t = table_2e5();
    GapStats stats = gap_stats(t, 4);
    std::ostringstream out;
    write_gap_csv(out, stats);
    CHECK(out.str() == "n,l_n,l_next,gap,ratio\n"
                       "2,3,7,4,2.20332\n"
                       "3,7,9,2,0.541901\n"
                       "4,9,13,4,0.899501\n");
}

TEST_CASE("mertens product") {
    const LuckyTable& t = table_2e5();
    CHECK(mertens_product(t, 2).product == doctest::Approx(2.0));
    CHECK(mertens_product(t, 3).product == doctest::Approx(3.0));
    MertensResult m = mertens_product(t, 1000);
    CHECK(m.product > 1.0);
    CHECK(m.log_ratio == doctest::Approx(m.product / std::log(1000.0)));
}

TEST_CASE("omega averages and the pointwise bound") {
    const LuckyTable& t = table_2e5();
    OmegaAverages avg = omega_averages(t, 1000);
    CHECK(avg.pointwise.passed());
    REQUIRE(!avg.ladder.empty());
    const OmegaLadderPoint& p10 = avg.ladder[0];
    CHECK(p10.x == 10);
    CHECK(p10.sum_omega == 15);
    CHECK(p10.sum_omega_big == 18);
    const OmegaLadderPoint& last = avg.ladder.back();
    CHECK(last.x == 1000);
    CHECK(last.sum_omega == 2220);
    CHECK(last.sum_omega_big == 3355);
    CHECK(avg.fitted_xlogx_constant > 0.0);
}

TEST_CASE("divisor bound sweep") {
    const LuckyTable& t = table_2e5();
    SweepReport r = divisor_bound_check(t, 2000);
    CHECK(r.passed());
}

TEST_CASE("legendre sweep") {
    const LuckyTable& t = table_2e5();
    SweepReport r = legendre_check(t, 400);
    CHECK(r.counterexample_count == 0);
    // a = 1: 3 sits in (1,4); a = 5: 31 and 33 sit in (25,36)
    CHECK(t.count_upto(3) - t.count_upto(1) == 1);
    CHECK(t.count_upto(35) - t.count_upto(25) == 2);
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
    const LuckyTable& t = table_2e5();
    SweepReport a = verify_bertrand(t, 2000, 1);
    SweepReport b = verify_bertrand(t, 2000, 4);
    CHECK(a.counterexample_count == b.counterexample_count);
    CHECK(a.counterexamples == b.counterexamples);
    CHECK(a.stats == b.stats);

    OmegaAverages one = omega_averages(t, 2000, 1);
    OmegaAverages four = omega_averages(t, 2000, 4);
    REQUIRE(one.ladder.size() == four.ladder.size());
    for (std::size_t i = 0; i < one.ladder.size(); ++i) {
        CHECK(one.ladder[i].sum_omega == four.ladder[i].sum_omega);
        CHECK(one.ladder[i].sum_omega_big == four.ladder[i].sum_omega_big);
    }

    SweepReport d1 = divisor_bound_check(t, 1500, 1);
    SweepReport d3 = divisor_bound_check(t, 1500, 3);
    CHECK(d1.counterexample_count == d3.counterexample_count);

    SweepReport s1 = sandwich_bounds_check(t, 2500, 1);
    SweepReport s5 = sandwich_bounds_check(t, 2500, 5);
    CHECK(s1.counterexample_count == s5.counterexample_count);
    CHECK(s1.stats == s5.stats);
}
