#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace dbsearch {

// Finite integer domain over a dense initial range [lo, hi].
// Removal is O(1); iteration is sorted. Restoration is handled by the Trail,
// which re-adds values in reverse removal order.
class Domain {
public:
    Domain(int lo, int hi) : lo_(lo), size_(hi - lo + 1), initial_size_(size_) {
        assert(hi >= lo);
        words_.assign((static_cast<size_t>(size_) + 63) / 64, ~uint64_t{0});
        int tail = size_ & 63;
        if (tail) words_.back() = (uint64_t{1} << tail) - 1;
    }

    int initial_size() const { return initial_size_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool is_assigned() const { return size_ == 1; }

    bool contains(int v) const {
        if (v < lo_ || v >= lo_ + initial_size_) return false;
        unsigned bit = static_cast<unsigned>(v - lo_);
        return (words_[bit >> 6] >> (bit & 63)) & 1;
    }

    // Returns false when v was not present (no-op).
    bool remove(int v) {
        if (!contains(v)) return false;
        unsigned bit = static_cast<unsigned>(v - lo_);
        words_[bit >> 6] &= ~(uint64_t{1} << (bit & 63));
        --size_;
        return true;
    }

    // Trail-restore only: re-insert a previously removed value.
    void restore_value(int v) {
        assert(!contains(v));
        unsigned bit = static_cast<unsigned>(v - lo_);
        words_[bit >> 6] |= uint64_t{1} << (bit & 63);
        ++size_;
    }

    int min() const {
        assert(size_ > 0);
        for (size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return lo_ + static_cast<int>((w << 6) + static_cast<unsigned>(__builtin_ctzll(words_[w])));
        return lo_;
    }

    int max() const {
        assert(size_ > 0);
        for (size_t w = words_.size(); w-- > 0;)
            if (words_[w]) return lo_ + static_cast<int>((w << 6) + 63 - static_cast<unsigned>(__builtin_clzll(words_[w])));
        return lo_;
    }

    int value() const {
        assert(is_assigned());
        return min();
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            uint64_t bits = words_[w];
            while (bits) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                f(lo_ + static_cast<int>((w << 6) + b));
                bits &= bits - 1;
            }
        }
    }

    std::vector<int> values() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(size_));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

private:
    int lo_;
    int size_;
    int initial_size_;
    std::vector<uint64_t> words_;
};

} // namespace dbsearch
