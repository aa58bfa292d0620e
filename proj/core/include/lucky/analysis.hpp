#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lucky/sieve.hpp"

// Empirical verification sweeps. Assertions are made only where a finite
// statement exists (interval coverage, sandwich bounds, the pointwise chain
// length bound, the partition identity); asymptotic claims are reported as
// fitted ratios with witnesses, never asserted. All floating-point values
// live in reports only, the checks themselves are exact.

namespace lucky {

struct SweepReport {
    std::string name;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t counterexample_count = 0;
    std::vector<std::uint64_t> counterexamples; // first kept_max of them
    std::vector<std::pair<std::string, std::string>> stats; // preformatted, ordered

    static constexpr std::size_t kept_max = 64;

    bool passed() const { return counterexample_count == 0; }
    void add_counterexample(std::uint64_t x);
    void merge_tail(const SweepReport& later); // appends a later chunk of the same sweep
};

/// Formats a double with 6 significant digits, the only way reals enter
/// reports.
std::string format_real(double v);

/// Every integer x in [4, x_max] has a survivor in [x, 2x].
/// Requires table.limit >= 2 * x_max.
SweepReport verify_bertrand(const LuckyTable& table, std::uint64_t x_max, unsigned threads = 1);

/// Sandwich bounds for the count function, checked exactly in big-integer
/// arithmetic for every integer x in [1, x_max]:
///   x * P(x) <= L(x) < x * P(x) + max(s(x), 1)
/// where the product P(x) runs over the s(x) sieve values the count
/// recurrence actually applies at x (its stabilization count). s(x) can
/// exceed the nominal L(L(x)) at boundary points, where the shorter product
/// provably fails; the applied-factor form is the one the derivation yields.
SweepReport sandwich_bounds_check(const LuckyTable& table, std::uint64_t x_max,
                                  unsigned threads = 1);

struct GapRecord {
    std::uint64_t n = 0;
    std::uint64_t l_n = 0;
    std::uint64_t l_next = 0;
    std::uint64_t gap = 0;
    double ratio = 0.0; // gap / sqrt(l_n * ln l_n), report-only
};

struct GapSummary {
    std::uint64_t n_lo = 0, n_hi = 0;
    double max_ratio = 0.0;
    std::uint64_t witness_n = 0;
    std::uint64_t max_gap = 0;
    std::uint64_t max_gap_n = 0;
    // running max of ratio sampled at powers of ten, (n, running_max)
    std::vector<std::pair<std::uint64_t, double>> checkpoints;
};

struct GapStats {
    std::vector<GapRecord> records;
    GapSummary summary;
};

/// Gap records for n in [2, n_max]; requires count() >= n_max + 1.
GapStats gap_stats(const LuckyTable& table, std::uint64_t n_max);

/// CSV with header n,l_n,l_next,gap,ratio
void write_gap_csv(std::ostream& out, const GapStats& stats);

struct MertensResult {
    std::uint64_t n = 0;
    double product = 0.0;   // prod l/(l-1) over sieve values l <= n
    double log_ratio = 0.0; // product / ln n (0 for n < 2... n >= 2 required)
};

MertensResult mertens_product(const LuckyTable& table, std::uint64_t n);

struct OmegaLadderPoint {
    std::uint64_t x = 0;
    std::uint64_t sum_omega = 0;     // distinct-element counts
    std::uint64_t sum_omega_big = 0; // chain lengths
    double a_hat = 0.0;              // sum_omega / (x ln ln x)
    double b_hat = 0.0;              // sum_omega_big / (x ln ln x)
    double xlogx_ratio = 0.0;        // sum_omega_big / (x ln x)
};

struct OmegaAverages {
    std::vector<OmegaLadderPoint> ladder; // powers of ten up to x_max
    double fitted_xlogx_constant = 0.0;   // max xlogx_ratio over the ladder
    std::uint64_t fitted_witness_x = 0;
    SweepReport pointwise; // chain length <= log2(n) + 1 for every n <= x_max
};

OmegaAverages omega_averages(const LuckyTable& table, std::uint64_t x_max, unsigned threads = 1);

/// Distinct-tuple divisor count within the quadratic bounds for every
/// n <= n_max, with equality whenever the chain has no repeated element.
SweepReport divisor_bound_check(const LuckyTable& table, std::uint64_t n_max, unsigned threads = 1);

/// Is there a survivor strictly between a^2 and (a+1)^2 for every a <= a_max?
/// Exploratory: counterexamples are reported, not asserted away.
SweepReport legendre_check(const LuckyTable& table, std::uint64_t a_max);

} // namespace lucky
