#pragma once

#include <cstdint>
#include <vector>

#ifdef _MSC_VER
#include <intrin.h>
#endif

namespace tt3 {

// Fixed-capacity dense bitset sized at construction. Vertex sets everywhere in
// this library are subsets of [0, n) for one host graph, so capacity is n.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int capacity() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void assign(int i, bool b) { b ? set(i) : reset(i); }
    void clear() { for (auto& w : w_) w = 0; }

    int count() const {
        int c = 0;
        for (auto w : w_) c += popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    int count_and(const Bitset& o) const {
        int c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += popcount(w_[i] & o.w_[i]);
        return c;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator-=(const Bitset& o) {  // set difference
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { a &= b; return a; }
    friend Bitset operator|(Bitset a, const Bitset& b) { a |= b; return a; }
    friend Bitset operator-(Bitset a, const Bitset& b) { a -= b; return a; }

    bool operator==(const Bitset&) const = default;

    // First set bit at position >= from, or -1.
    int next(int from = 0) const {
        if (from >= n_) return -1;
        int wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (w) {
                int i = (wi << 6) + ctz(w);
                return i < n_ ? i : -1;
            }
            if (++wi >= (int)w_.size()) return -1;
            w = w_[wi];
        }
    }

    template <class F>
    void for_each(F f) const {
        for (int i = next(0); i >= 0; i = next(i + 1)) f(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    static Bitset of(int n, const std::vector<int>& ids) {
        Bitset b(n);
        for (int i : ids) b.set(i);
        return b;
    }

private:
    static int popcount(std::uint64_t w) {
#ifdef _MSC_VER
        return (int)__popcnt64(w);
#else
        return __builtin_popcountll(w);
#endif
    }
    static int ctz(std::uint64_t w) {
#ifdef _MSC_VER
        unsigned long i; _BitScanForward64(&i, w); return (int)i;
#else
        return __builtin_ctzll(w);
#endif
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace tt3
