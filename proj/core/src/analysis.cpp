#include "lucky/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "lucky/arithmetic.hpp"
#include "lucky/parallel.hpp"

namespace lucky {

void SweepReport::add_counterexample(std::uint64_t x) {
    if (counterexamples.size() < kept_max) counterexamples.push_back(x);
    ++counterexample_count;
}

void SweepReport::merge_tail(const SweepReport& later) {
    for (std::uint64_t x : later.counterexamples)
        if (counterexamples.size() < kept_max) counterexamples.push_back(x);
    counterexample_count += later.counterexample_count;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------

SweepReport verify_bertrand(const LuckyTable& table, std::uint64_t x_max, unsigned threads) {
    if (x_max < 4) throw Error(ErrorCode::invalid_argument, "bertrand sweep needs x_max >= 4");
    if (table.limit() < 2 * x_max) throw_needs_larger_table(2 * x_max, "bertrand sweep");
    SweepReport report;
    report.name = "bertrand";
    report.lo = 4;
    report.hi = x_max;

    unsigned chunks = chunk_count(4, x_max, threads);
    std::vector<SweepReport> parts(chunks);
    parallel_chunks(4, x_max, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x <= hi; ++x)
            if (table.count_upto(2 * x) - table.count_upto(x - 1) == 0)
                parts[w].add_counterexample(x);
    });
    for (const SweepReport& part : parts) report.merge_tail(part);
    report.stats.emplace_back("checked", std::to_string(x_max - 3));
    return report;
}

// ---------------------------------------------------------------------------
// Sandwich bounds, exactly.

namespace {

// Minimal unsigned big integer: little-endian 64-bit words. Only what the
// bound comparisons need: multiply by a word, add, compare.
struct BigUnsigned {
    std::vector<std::uint64_t> words{0};

    static BigUnsigned from(std::uint64_t v) { return BigUnsigned{{v}}; }

    void trim() {
        while (words.size() > 1 && words.back() == 0) words.pop_back();
    }

    BigUnsigned times(std::uint64_t m) const {
        BigUnsigned r;
        r.words.assign(words.size() + 1, 0);
        __uint128_t carry = 0;
        for (std::size_t i = 0; i < words.size(); ++i) {
            __uint128_t cur = static_cast<__uint128_t>(words[i]) * m + carry;
            r.words[i] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        r.words[words.size()] = static_cast<std::uint64_t>(carry);
        r.trim();
        return r;
    }

    BigUnsigned plus(const BigUnsigned& other) const {
        BigUnsigned r;
        std::size_t n = std::max(words.size(), other.words.size());
        r.words.assign(n + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            __uint128_t cur = carry;
            if (i < words.size()) cur += words[i];
            if (i < other.words.size()) cur += other.words[i];
            r.words[i] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        r.words[n] = carry;
        r.trim();
        return r;
    }

    // <0, 0, >0 like memcmp
    int compare(const BigUnsigned& other) const {
        if (words.size() != other.words.size())
            return words.size() < other.words.size() ? -1 : 1;
        for (std::size_t i = words.size(); i-- > 0;)
            if (words[i] != other.words[i]) return words[i] < other.words[i] ? -1 : 1;
        return 0;
    }
};

// Cumulative products over the sieve values: numers[k] = prod (l_i - 1),
// denoms[k] = prod l_i for i = 1..k, grown on demand.
struct ProductLadder {
    const LuckyTable& table;
    std::vector<BigUnsigned> numers{BigUnsigned::from(1)};
    std::vector<BigUnsigned> denoms{BigUnsigned::from(1)};

    void ensure(std::uint64_t k) {
        while (numers.size() <= k) {
            std::uint64_t i = numers.size();
            std::uint64_t l = table.l_index(i);
            numers.push_back(numers.back().times(l - 1));
            denoms.push_back(denoms.back().times(l));
        }
    }
};

} // namespace

SweepReport sandwich_bounds_check(const LuckyTable& table, std::uint64_t x_max,
                                  unsigned threads) {
    if (x_max == 0) throw Error(ErrorCode::invalid_argument, "sandwich sweep needs x_max >= 1");
    if (table.limit() < x_max) throw_needs_larger_table(x_max, "sandwich sweep");
    SweepReport report;
    report.name = "sandwich-bounds";
    report.lo = 1;
    report.hi = x_max;

    struct ChunkResult {
        SweepReport part;
        double min_upper_slack = 1e300;
        std::uint64_t min_upper_slack_x = 0;
    };
    unsigned chunks = chunk_count(1, x_max, threads);
    std::vector<ChunkResult> results(chunks);
    parallel_chunks(1, x_max, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        ProductLadder ladder{table}; // per-worker; growing it is cheap
        ChunkResult& res = results[w];
        std::vector<double> float_prod{1.0}; // report-only shadow of the ladder
        for (std::uint64_t x = lo; x <= hi; ++x) {
            // stabilization count s and final count via the recurrence
            std::uint64_t term = x;
            std::uint64_t s = 0;
            for (std::uint64_t i = 1;; ++i) {
                std::uint64_t value = i == 1 ? 2 : (i <= table.count() ? table.nth_raw(i) : 0);
                if (value == 0 || value > term) break;
                term -= term / value;
                ++s;
            }
            std::uint64_t count = term;
            ladder.ensure(s);
            while (float_prod.size() <= s) {
                double l = static_cast<double>(table.l_index(float_prod.size()));
                float_prod.push_back(float_prod.back() * (l - 1.0) / l);
            }

            BigUnsigned lhs = ladder.numers[s].times(x);     // x * prod (l_i - 1)
            BigUnsigned mid = ladder.denoms[s].times(count); // L(x) * prod l_i
            std::uint64_t addend = std::max<std::uint64_t>(s, 1);
            BigUnsigned rhs = lhs.plus(ladder.denoms[s].times(addend));
            bool lower_ok = lhs.compare(mid) <= 0;
            bool upper_ok = mid.compare(rhs) < 0;
            if (!lower_ok || !upper_ok) res.part.add_counterexample(x);

            // report-only: how close the strict upper bound comes
            double slack = static_cast<double>(x) * float_prod[s] +
                           static_cast<double>(addend) - static_cast<double>(count);
            if (slack < res.min_upper_slack) {
                res.min_upper_slack = slack;
                res.min_upper_slack_x = x;
            }
        }
    });
    double min_upper_slack = 1e300;
    std::uint64_t min_upper_slack_x = 0;
    for (const ChunkResult& res : results) {
        report.merge_tail(res.part);
        if (res.min_upper_slack < min_upper_slack) {
            min_upper_slack = res.min_upper_slack;
            min_upper_slack_x = res.min_upper_slack_x;
        }
    }
    report.stats.emplace_back("min_upper_slack", format_real(min_upper_slack));
    report.stats.emplace_back("min_upper_slack_x", std::to_string(min_upper_slack_x));
    return report;
}

// ---------------------------------------------------------------------------

GapStats gap_stats(const LuckyTable& table, std::uint64_t n_max) {
    if (n_max < 2) throw Error(ErrorCode::invalid_argument, "gap sweep needs n_max >= 2");
    if (table.count() < n_max + 1)
        throw_needs_larger_table(table.limit() * 2, "gap sweep needs more survivors");
    GapStats stats;
    stats.records.reserve(n_max - 1);
    stats.summary.n_lo = 2;
    stats.summary.n_hi = n_max;
    double running_max = 0.0;
    std::uint64_t next_checkpoint = 10;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        GapRecord rec;
        rec.n = n;
        rec.l_n = table.l_index(n);
        rec.l_next = table.l_index(n + 1);
        rec.gap = rec.l_next - rec.l_n;
        rec.ratio = static_cast<double>(rec.gap) /
                    std::sqrt(static_cast<double>(rec.l_n) * std::log(static_cast<double>(rec.l_n)));
        if (rec.ratio > running_max) {
            running_max = rec.ratio;
            stats.summary.max_ratio = rec.ratio;
            stats.summary.witness_n = n;
        }
        if (rec.gap > stats.summary.max_gap) {
            stats.summary.max_gap = rec.gap;
            stats.summary.max_gap_n = n;
        }
        if (n == next_checkpoint) {
            stats.summary.checkpoints.emplace_back(n, running_max);
            next_checkpoint *= 10;
        }
        stats.records.push_back(rec);
    }
    if (stats.summary.checkpoints.empty() || stats.summary.checkpoints.back().first != n_max)
        stats.summary.checkpoints.emplace_back(n_max, running_max);
    return stats;
}

void write_gap_csv(std::ostream& out, const GapStats& stats) {
    out << "n,l_n,l_next,gap,ratio\n";
    for (const GapRecord& rec : stats.records)
        out << rec.n << ',' << rec.l_n << ',' << rec.l_next << ',' << rec.gap << ','
            << format_real(rec.ratio) << '\n';
}

MertensResult mertens_product(const LuckyTable& table, std::uint64_t n) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "mertens product needs n >= 2");
    if (n > table.limit()) throw_needs_larger_table(n, "mertens product");
    MertensResult r;
    r.n = n;
    double product = 2.0; // the leading sieve value 2
    std::uint64_t count = table.count_upto(n);
    for (std::uint64_t i = 2; i <= count; ++i) {
        double l = static_cast<double>(table.nth_raw(i));
        product *= l / (l - 1.0);
    }
    r.product = product;
    r.log_ratio = product / std::log(static_cast<double>(n));
    return r;
}

// ---------------------------------------------------------------------------

OmegaAverages omega_averages(const LuckyTable& table, std::uint64_t x_max, unsigned threads) {
    if (x_max == 0) throw Error(ErrorCode::invalid_argument, "omega sweep needs x_max >= 1");
    if (table.limit() < x_max) throw_needs_larger_table(x_max, "omega sweep");
    OmegaAverages out;
    out.pointwise.name = "omega-pointwise-bound";
    out.pointwise.lo = 1;
    out.pointwise.hi = x_max;

    std::vector<std::uint8_t> omega(x_max + 1, 0), omega_len(x_max + 1, 0);
    unsigned chunks = chunk_count(1, x_max, threads);
    std::vector<SweepReport> parts(chunks);
    parallel_chunks(1, x_max, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> distinct;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            FactorChain chain = factor(table, n);
            distinct.assign(chain.elements.begin(), chain.elements.end());
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            omega[n] = static_cast<std::uint8_t>(distinct.size());
            omega_len[n] = static_cast<std::uint8_t>(chain.elements.size());
            if (static_cast<double>(chain.elements.size()) >
                std::log2(static_cast<double>(n)) + 1.0)
                parts[w].add_counterexample(n);
        }
    });
    for (const SweepReport& part : parts) out.pointwise.merge_tail(part);

    std::uint64_t sum_small = 0, sum_big = 0, next_point = 10;
    for (std::uint64_t n = 1; n <= x_max; ++n) {
        sum_small += omega[n];
        sum_big += omega_len[n];
        if (n == next_point || n == x_max) {
            OmegaLadderPoint pt;
            pt.x = n;
            pt.sum_omega = sum_small;
            pt.sum_omega_big = sum_big;
            double x = static_cast<double>(n);
            double lnln = n >= 3 ? std::log(std::log(x)) : 0.0;
            pt.a_hat = lnln > 0 ? static_cast<double>(sum_small) / (x * lnln) : 0.0;
            pt.b_hat = lnln > 0 ? static_cast<double>(sum_big) / (x * lnln) : 0.0;
            pt.xlogx_ratio = n >= 2 ? static_cast<double>(sum_big) / (x * std::log(x)) : 0.0;
            out.ladder.push_back(pt);
            if (pt.xlogx_ratio > out.fitted_xlogx_constant) {
                out.fitted_xlogx_constant = pt.xlogx_ratio;
                out.fitted_witness_x = n;
            }
            while (next_point <= n) next_point *= 10;
        }
    }
    return out;
}

SweepReport divisor_bound_check(const LuckyTable& table, std::uint64_t n_max, unsigned threads) {
    if (n_max == 0) throw Error(ErrorCode::invalid_argument, "divisor sweep needs n_max >= 1");
    if (table.limit() < n_max) throw_needs_larger_table(n_max, "divisor sweep");
    SweepReport report;
    report.name = "divisor-bounds";
    report.lo = 1;
    report.hi = n_max;
    unsigned chunks = chunk_count(1, n_max, threads);
    std::vector<SweepReport> parts(chunks);
    parallel_chunks(1, n_max, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t n = lo; n <= hi; ++n) {
            FactorChain chain = factor(table, n);
            std::size_t k = chain.elements.size();
            std::set<std::vector<std::uint64_t>> distinct_slices;
            std::set<std::uint64_t> distinct_elements(chain.elements.begin(),
                                                      chain.elements.end());
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = a; b < k; ++b)
                    distinct_slices.emplace(chain.elements.begin() + a,
                                            chain.elements.begin() + b + 1);
            std::uint64_t tuples = distinct_slices.size();
            std::uint64_t w_small = distinct_elements.size();
            std::uint64_t w_big = k;
            std::uint64_t lower = (w_small * w_small + w_small) / 2;
            std::uint64_t upper = (w_big * w_big - w_big) / 2 + w_small;
            bool ok = lower <= tuples && tuples <= upper;
            if (ok && w_small == w_big) ok = tuples == lower && tuples == upper;
            if (!ok) parts[w].add_counterexample(n);
        }
    });
    for (const SweepReport& part : parts) report.merge_tail(part);
    report.stats.emplace_back("checked", std::to_string(n_max));
    return report;
}

SweepReport legendre_check(const LuckyTable& table, std::uint64_t a_max) {
    if (a_max == 0) throw Error(ErrorCode::invalid_argument, "legendre sweep needs a_max >= 1");
    std::uint64_t needed = (a_max + 1) * (a_max + 1) - 1;
    if (table.limit() < needed) throw_needs_larger_table(needed, "legendre sweep");
    SweepReport report;
    report.name = "legendre";
    report.lo = 1;
    report.hi = a_max;
    for (std::uint64_t a = 1; a <= a_max; ++a) {
        std::uint64_t inside =
            table.count_upto((a + 1) * (a + 1) - 1) - table.count_upto(a * a);
        if (inside == 0) report.add_counterexample(a);
    }
    report.stats.emplace_back("checked", std::to_string(a_max));
    return report;
}

} // namespace lucky
