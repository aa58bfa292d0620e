#include "lucky/sieve.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "lucky/fenwick.hpp"

namespace lucky {

namespace {

void check_limit(std::uint64_t limit) {
    if (limit == 0) throw Error(ErrorCode::invalid_argument, "sieve limit must be >= 1");
    if (limit > LuckyTable::max_limit)
        throw Error(ErrorCode::invalid_argument,
                    "sieve limit exceeds the memory-resident maximum " +
                        std::to_string(LuckyTable::max_limit));
}

// Compact engine: keep the live values in a vector and rebuild it in place
// each pass. Deletions land at 1-based positions l, 2l, ...; the survivors
// between them are moved down in one block each.
std::vector<std::uint32_t> compact_sieve(std::uint64_t limit, std::uint64_t& stages) {
    std::vector<std::uint32_t> live(limit);
    std::iota(live.begin(), live.end(), 1u);
    stages = 0;
    for (std::uint64_t pass = 1;; ++pass) {
        std::uint64_t value;
        if (pass == 1) {
            value = 2;
        } else {
            if (pass > live.size()) break;
            value = live[pass - 1];
        }
        if (value > live.size()) break;
        std::size_t deletions = live.size() / value;
        std::size_t dst = value - 1;
        for (std::size_t j = 1; j <= deletions; ++j) {
            std::size_t src = j * value;
            std::size_t end = j == deletions ? live.size() : (j + 1) * value - 1;
            std::memmove(live.data() + dst, live.data() + src, (end - src) * sizeof(std::uint32_t));
            dst += end - src;
        }
        live.resize(dst);
        ++stages;
    }
    return live;
}

// Indexed engine: occupancy Fenwick over [1, limit]; each victim is found by
// rank selection and removed individually. Victim j of a pass with value l
// sits at current rank j*(l-1)+1 once the j-1 earlier victims are gone.
std::vector<std::uint32_t> indexed_sieve(std::uint64_t limit, std::uint64_t& stages) {
    FenwickOccupancy fen(static_cast<std::size_t>(limit));
    std::vector<std::uint64_t> alive((limit + 63) / 64, ~0ULL);
    std::uint64_t count = limit;
    stages = 0;
    for (std::uint64_t pass = 1;; ++pass) {
        std::uint64_t value;
        if (pass == 1) {
            value = 2;
        } else {
            if (pass > count) break;
            value = fen.select(pass);
        }
        if (value > count) break;
        std::uint64_t deletions = count / value;
        for (std::uint64_t j = 1; j <= deletions; ++j) {
            std::uint64_t rank = j * (value - 1) + 1;
            std::size_t victim = fen.select(rank);
            fen.remove(victim);
            alive[(victim - 1) >> 6] &= ~(1ULL << ((victim - 1) & 63));
        }
        count -= deletions;
        ++stages;
    }
    std::vector<std::uint32_t> survivors;
    survivors.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t word = 0; word < alive.size(); ++word) {
        std::uint64_t bits = alive[word];
        while (bits) {
            unsigned bit = static_cast<unsigned>(__builtin_ctzll(bits));
            std::uint64_t v = (word << 6) + bit + 1;
            if (v > limit) break;
            survivors.push_back(static_cast<std::uint32_t>(v));
            bits &= bits - 1;
        }
    }
    return survivors;
}

} // namespace

LuckyTable LuckyTable::sieve_upto(std::uint64_t limit, SieveEngine engine) {
    check_limit(limit);
    LuckyTable table;
    table.limit_ = limit;
    std::vector<std::uint32_t> survivors = engine == SieveEngine::compact
                                               ? compact_sieve(limit, table.stages_)
                                               : indexed_sieve(limit, table.stages_);
    table.survivors_.assign(survivors.begin(), survivors.end());
    table.rebuild_presence();
    return table;
}

void LuckyTable::rebuild_presence() {
    presence_.assign((limit_ + 63) / 64, 0);
    for (std::uint64_t v : survivors_) presence_[(v - 1) >> 6] |= 1ULL << ((v - 1) & 63);
}

bool LuckyTable::contains(std::uint64_t n) const {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "membership query for 0");
    if (n > limit_) throw_needs_larger_table(n, "membership query beyond table");
    return (presence_[(n - 1) >> 6] >> ((n - 1) & 63)) & 1;
}

std::uint64_t LuckyTable::count_upto(std::uint64_t x) const {
    if (x == 0) throw Error(ErrorCode::invalid_argument, "count_upto requires x >= 1");
    if (x > limit_)
        throw Error(ErrorCode::out_of_range,
                    "count_upto(" + std::to_string(x) + ") beyond table limit " +
                        std::to_string(limit_));
    auto it = std::upper_bound(survivors_.begin(), survivors_.end(), x);
    return static_cast<std::uint64_t>(it - survivors_.begin());
}

std::uint64_t LuckyTable::nth_raw(std::uint64_t k) const {
    if (k == 0 || k > survivors_.size())
        throw Error(ErrorCode::out_of_range,
                    "nth_raw(" + std::to_string(k) + ") outside [1, " +
                        std::to_string(survivors_.size()) + "]");
    return survivors_[k - 1];
}

std::uint64_t LuckyTable::l_index(std::uint64_t n) const {
    if (n == 1) return 2;
    return nth_raw(n);
}

void LuckyTable::save(std::ostream& out) const {
    out << "luckytable v1 limit=" << limit_ << " count=" << survivors_.size() << '\n';
    for (std::uint64_t v : survivors_) out << v << '\n';
}

void LuckyTable::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary); // binary: keep \n exact
    if (!out) throw Error(ErrorCode::invalid_argument, "cannot open " + path + " for writing");
    save(out);
    if (!out) throw Error(ErrorCode::invalid_argument, "failed writing " + path);
}

LuckyTable LuckyTable::load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw Error(ErrorCode::bad_format, "empty sieve cache");
    std::uint64_t limit = 0, count = 0;
    {
        std::istringstream hs(header);
        std::string magic, version, limit_kv, count_kv;
        hs >> magic >> version >> limit_kv >> count_kv;
        if (magic != "luckytable" || version != "v1" || limit_kv.rfind("limit=", 0) != 0 ||
            count_kv.rfind("count=", 0) != 0 || !hs.eof())
            throw Error(ErrorCode::bad_format, "bad sieve cache header: " + header);
        auto parse = [](const std::string& s, std::uint64_t& out_v) {
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out_v);
            return ec == std::errc() && p == s.data() + s.size();
        };
        if (!parse(limit_kv.substr(6), limit) || !parse(count_kv.substr(6), count))
            throw Error(ErrorCode::bad_format, "bad sieve cache header: " + header);
    }
    check_limit(limit);
    if (count > limit)
        throw Error(ErrorCode::bad_format,
                    "sieve cache header claims more survivors than the limit allows");
    LuckyTable table;
    table.limit_ = limit;
    table.survivors_.reserve(std::min<std::uint64_t>(count, 1 << 20));
    std::string line;
    for (std::uint64_t k = 0; k < count; ++k) {
        if (!std::getline(in, line))
            throw Error(ErrorCode::bad_format, "sieve cache truncated at entry " + std::to_string(k));
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc() || p != line.data() + line.size())
            throw Error(ErrorCode::bad_format, "bad sieve cache entry: " + line);
        if (v > limit || (table.survivors_.empty() ? v != 1 : v <= table.survivors_.back()))
            throw Error(ErrorCode::bad_format,
                        "sieve cache violates monotonicity/limit at " + std::to_string(v));
        table.survivors_.push_back(v);
    }
    if (std::getline(in, line))
        throw Error(ErrorCode::bad_format, "trailing data after sieve cache entries");
    table.stages_ = 0; // not recorded in the cache format
    table.rebuild_presence();
    return table;
}

LuckyTable LuckyTable::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
    return load(in);
}

// ---------------------------------------------------------------------------
// Stage sets

StagePool::StagePool(std::uint64_t limit) : limit_(limit) {
    check_limit(limit);
    StageSet a0;
    a0.stage = 0;
    a0.limit = limit;
    a0.members.resize(limit);
    std::iota(a0.members.begin(), a0.members.end(), std::uint64_t{1});
    stages_.push_back(std::move(a0));
}

bool StagePool::extend() {
    if (stable_) return false;
    const StageSet& prev = stages_.back();
    std::uint64_t pass = prev.stage + 1;
    std::uint64_t value = pass == 1 ? 2
                          : pass <= prev.members.size() ? prev.members[pass - 1]
                                                        : limit_ + 1;
    if (value > prev.members.size()) {
        stable_ = true;
        return false;
    }
    StageSet next;
    next.stage = pass;
    next.limit = limit_;
    next.members.reserve(prev.members.size() - prev.members.size() / value);
    for (std::size_t idx = 0; idx < prev.members.size(); ++idx)
        if ((idx + 1) % value != 0) next.members.push_back(prev.members[idx]);
    stages_.push_back(std::move(next));
    return true;
}

const StageSet& StagePool::stage(std::uint64_t i) {
    while (i >= stages_.size() && extend()) {}
    if (i >= stages_.size())
        throw Error(ErrorCode::out_of_range,
                    "stage " + std::to_string(i) + " past the last effective stage " +
                        std::to_string(stages_.size() - 1));
    return stages_[i];
}

std::uint64_t StagePool::rank_in_stage(std::uint64_t i, std::uint64_t n) {
    const StageSet& set = stage(i);
    auto it = std::lower_bound(set.members.begin(), set.members.end(), n);
    if (it == set.members.end() || *it != n)
        throw Error(ErrorCode::not_a_member,
                    std::to_string(n) + " is not a member of stage " + std::to_string(i));
    return static_cast<std::uint64_t>(it - set.members.begin()) + 1;
}

std::uint64_t StagePool::effective_stages() {
    while (extend()) {}
    return stages_.size() - 1;
}

StageSet stage_set(std::uint64_t limit, std::uint64_t i) {
    StagePool pool(limit);
    return pool.stage(i);
}

std::uint64_t rank_in_stage(std::uint64_t limit, std::uint64_t i, std::uint64_t n) {
    StagePool pool(limit);
    return pool.rank_in_stage(i, n);
}

// ---------------------------------------------------------------------------
// GrowingTable

GrowingTable::GrowingTable(std::uint64_t initial_limit, SieveEngine engine)
    : table_(LuckyTable::sieve_upto(initial_limit == 0 ? 1 : initial_limit, engine)),
      engine_(engine) {}

GrowingTable::GrowingTable(LuckyTable table, SieveEngine engine)
    : table_(std::move(table)), engine_(engine) {}

const LuckyTable& GrowingTable::at_least(std::uint64_t limit) {
    if (table_.limit() < limit) grow(limit);
    return table_;
}

const LuckyTable& GrowingTable::with_count(std::uint64_t count) {
    while (table_.count() < count) grow(table_.limit() * 2);
    return table_;
}

void GrowingTable::grow(std::uint64_t required) {
    std::uint64_t next = table_.limit();
    do {
        next = std::min<std::uint64_t>(LuckyTable::max_limit, next * 2);
    } while (next < required && next < LuckyTable::max_limit);
    if (next < required)
        throw Error(ErrorCode::invalid_argument,
                    "required table limit " + std::to_string(required) + " exceeds the maximum");
    table_ = LuckyTable::sieve_upto(next, engine_);
}

} // namespace lucky
