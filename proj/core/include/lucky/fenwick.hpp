#pragma once

#include <cstdint>
#include <vector>

namespace lucky {

// Fenwick tree over positions 1..n holding 0/1 occupancy, supporting
// "select k-th live position" and "remove position" in O(log n).
// Backbone of the indexed sieve engine.
class FenwickOccupancy {
  public:
    explicit FenwickOccupancy(std::size_t n) : n_(n), bit_(n + 1) {
        // all-ones init: node i covers (i - lowbit(i), i]
        for (std::size_t i = 1; i <= n_; ++i) bit_[i] = static_cast<std::int32_t>(i & (~i + 1));
        top_ = 1;
        while ((top_ << 1) <= n_) top_ <<= 1;
    }

    std::size_t size() const { return n_; }

    void remove(std::size_t pos) {
        for (; pos <= n_; pos += pos & (~pos + 1)) --bit_[pos];
    }

    std::uint64_t prefix(std::size_t pos) const {
        std::uint64_t s = 0;
        for (; pos > 0; pos -= pos & (~pos + 1)) s += static_cast<std::uint64_t>(bit_[pos]);
        return s;
    }

    // Smallest position whose prefix count reaches k (the k-th live position).
    // Caller guarantees 1 <= k <= live count.
    std::size_t select(std::uint64_t k) const {
        std::size_t pos = 0;
        std::uint64_t remaining = k;
        for (std::size_t step = top_; step != 0; step >>= 1) {
            std::size_t next = pos + step;
            if (next <= n_ && static_cast<std::uint64_t>(bit_[next]) < remaining) {
                pos = next;
                remaining -= static_cast<std::uint64_t>(bit_[next]);
            }
        }
        return pos + 1;
    }

  private:
    std::size_t n_;
    std::size_t top_;
    std::vector<std::int32_t> bit_;
};

} // namespace lucky
