#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lucky/errors.hpp"

namespace lucky {

/// Which sieve engine builds the table.
///  - compact: rebuilds the survivor list pass by pass; the simple,
///    oracle-grade implementation.
///  - indexed: occupancy bitmap plus a Fenwick rank/select structure;
///    deletes each victim in O(log n) and is the fast default.
/// Both engines must produce identical tables; the benchmark harness and the
/// acceptance suite compare them.
enum class SieveEngine { compact, indexed };

/// Immutable result of sifting [1, limit]: the lucky numbers up to `limit`
/// with membership, rank and order queries. Safe to share across threads
/// once constructed.
///
/// Indexing comes in two flavours:
///  - nth_raw(k): the k-th survivor, nth_raw(1) = 1.
///  - l_index(n): the sieve-value sequence 2, 3, 7, 9, 13, ... where the
///    leading 1 is replaced by 2 (the first pass removes every 2nd number).
///    All closed-form evaluations in formulas.hpp use l_index.
class LuckyTable {
  public:
    static constexpr std::uint64_t max_limit = 0x7fffffffULL; // memory-resident only

    static LuckyTable sieve_upto(std::uint64_t limit, SieveEngine engine = SieveEngine::indexed);

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t count() const noexcept { return survivors_.size(); }
    std::uint64_t stages_applied() const noexcept { return stages_; }
    std::span<const std::uint64_t> survivors() const noexcept { return survivors_; }

    /// Membership in the final sifted set. Requires n <= limit.
    bool contains(std::uint64_t n) const;

    /// Number of survivors <= x, counting 1. Requires x <= limit.
    std::uint64_t count_upto(std::uint64_t x) const;

    /// k-th survivor, 1-based: nth_raw(1) = 1, nth_raw(2) = 3, ...
    std::uint64_t nth_raw(std::uint64_t k) const;

    /// Sieve-value sequence: l_index(1) = 2, l_index(n) = nth_raw(n) for n >= 2.
    std::uint64_t l_index(std::uint64_t n) const;

    /// Text cache format, bit-exact:
    ///   luckytable v1 limit=<M> count=<K>\n
    /// followed by K survivor lines. No trailing blank line.
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static LuckyTable load(std::istream& in);
    static LuckyTable load_file(const std::string& path);

  private:
    LuckyTable() = default;
    void rebuild_presence();

    std::uint64_t limit_ = 0;
    std::uint64_t stages_ = 0;
    std::vector<std::uint64_t> survivors_;
    std::vector<std::uint64_t> presence_; // bit v-1 set iff v survives
};

/// One intermediate sieve stage: the set remaining after `stage` passes,
/// clipped to [1, limit]. stage 0 is all of [1, limit].
struct StageSet {
    std::uint64_t stage = 0;
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> members;
};

/// Literal repeated-deletion stage computation, memoized per limit.
/// Only meant for oracle tests and small-range cross-checks; the fast path
/// never materializes stages.
class StagePool {
  public:
    explicit StagePool(std::uint64_t limit);

    /// A_i for this limit. Throws out_of_range past the last effective stage.
    const StageSet& stage(std::uint64_t i);

    /// 1-based position of n within stage i. Throws not_a_member if absent.
    std::uint64_t rank_in_stage(std::uint64_t i, std::uint64_t n);

    /// Number of passes after which further passes change nothing.
    std::uint64_t effective_stages();

  private:
    bool extend(); // computes the next stage; false once stable
    std::uint64_t limit_;
    bool stable_ = false;
    std::vector<StageSet> stages_;
};

StageSet stage_set(std::uint64_t limit, std::uint64_t i);
std::uint64_t rank_in_stage(std::uint64_t limit, std::uint64_t i, std::uint64_t n);

/// Owns a LuckyTable and regrows it geometrically whenever a callee reports
/// needs_larger_table. Growth invalidates references into the old table.
class GrowingTable {
  public:
    explicit GrowingTable(std::uint64_t initial_limit = 4096,
                          SieveEngine engine = SieveEngine::indexed);
    explicit GrowingTable(LuckyTable table, SieveEngine engine = SieveEngine::indexed);

    const LuckyTable& current() const { return table_; }
    const LuckyTable& at_least(std::uint64_t limit);
    const LuckyTable& with_count(std::uint64_t count); // ensure >= count survivors

    /// Runs f(table) and retries with a doubled table on needs_larger_table.
    template <typename F>
    auto retrying(F&& f) {
        for (;;) {
            try {
                return f(table_);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::needs_larger_table) throw;
                grow(e.required_limit());
            }
        }
    }

  private:
    void grow(std::uint64_t required);
    LuckyTable table_;
    SieveEngine engine_;
};

} // namespace lucky
