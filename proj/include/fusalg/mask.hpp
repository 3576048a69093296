#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "fusalg/errors.hpp"

namespace fusalg {

/// Bit-set over the element indices 0..carrier_size-1 of a ring or module.
/// The universal carrier for ideals, submodules, torsion sets, annihilators.
class SubsetMask {
public:
    SubsetMask() = default;

    explicit SubsetMask(int carrier_size)
        : carrier_(carrier_size), words_((carrier_size + 63) / 64, 0) {
        if (carrier_size < 0) throw input_error("SubsetMask: negative carrier size");
    }

    SubsetMask(int carrier_size, std::initializer_list<int> elems) : SubsetMask(carrier_size) {
        for (int e : elems) set(e);
    }

    static SubsetMask full(int carrier_size) {
        SubsetMask m(carrier_size);
        for (auto& w : m.words_) w = ~std::uint64_t{0};
        m.trim();
        return m;
    }

    static SubsetMask single(int carrier_size, int i) {
        SubsetMask m(carrier_size);
        m.set(i);
        return m;
    }

    static SubsetMask from_indices(int carrier_size, const std::vector<int>& elems) {
        SubsetMask m(carrier_size);
        for (int e : elems) m.set(e);
        return m;
    }

    int carrier_size() const { return carrier_; }

    bool test(int i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void set(int i) {
        check_index(i);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(int i) {
        check_index(i);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    /// True iff some index other than 0 is set. Intersections of ideals always
    /// contain 0, so "nonzero intersection" means exactly this.
    bool any_beyond_zero() const {
        if (words_.empty()) return false;
        if (words_[0] & ~std::uint64_t{1}) return true;
        for (std::size_t k = 1; k < words_.size(); ++k) if (words_[k]) return true;
        return false;
    }

    /// Smallest set index, or -1 when empty.
    int first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return int(k * 64 + std::countr_zero(words_[k]));
        return -1;
    }

    /// Smallest set index greater than i, or -1.
    int next(int i) const {
        ++i;
        if (i >= carrier_) return -1;
        std::size_t k = std::size_t(i) >> 6;
        std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return int(k * 64 + std::countr_zero(w));
            if (++k >= words_.size()) return -1;
            w = words_[k];
        }
    }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        out.reserve(count());
        for (int i = first(); i >= 0; i = next(i)) out.push_back(i);
        return out;
    }

    SubsetMask operator&(const SubsetMask& o) const { return binop(o, [](auto a, auto b) { return a & b; }); }
    SubsetMask operator|(const SubsetMask& o) const { return binop(o, [](auto a, auto b) { return a | b; }); }
    SubsetMask operator^(const SubsetMask& o) const { return binop(o, [](auto a, auto b) { return a ^ b; }); }

    SubsetMask& operator&=(const SubsetMask& o) { return *this = *this & o; }
    SubsetMask& operator|=(const SubsetMask& o) { return *this = *this | o; }

    SubsetMask complement() const {
        SubsetMask r(carrier_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = ~words_[k];
        r.trim();
        return r;
    }

    bool operator==(const SubsetMask& o) const = default;

    /// Lexicographic order on the index sequence; canonical order for reports.
    bool operator<(const SubsetMask& o) const {
        check_carrier(o);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] == o.words_[k]) continue;
            // Lower set bits first: compare the lowest differing bit.
            std::uint64_t diff = words_[k] ^ o.words_[k];
            std::uint64_t low = diff & ~(diff - 1);
            return words_[k] & low;
        }
        return false;
    }

    bool is_subset_of(const SubsetMask& o) const {
        check_carrier(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    bool intersects(const SubsetMask& o) const {
        check_carrier(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto w : words_) {
            h ^= w;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first_one = true;
        for (int i = first(); i >= 0; i = next(i)) {
            if (!first_one) s += ",";
            s += std::to_string(i);
            first_one = false;
        }
        return s + "}";
    }

private:
    template <class F>
    SubsetMask binop(const SubsetMask& o, F f) const {
        check_carrier(o);
        SubsetMask r(carrier_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = f(words_[k], o.words_[k]);
        return r;
    }

    void trim() {
        int tail = carrier_ & 63;
        if (tail && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    void check_index(int i) const {
        if (i < 0 || i >= carrier_) throw input_error("SubsetMask: index " + std::to_string(i) + " out of carrier 0.." + std::to_string(carrier_ - 1));
    }

    void check_carrier(const SubsetMask& o) const {
        if (carrier_ != o.carrier_) throw input_error("SubsetMask: carrier size mismatch");
    }

    int carrier_ = 0;
    std::vector<std::uint64_t> words_;
};

struct SubsetMaskHash {
    std::size_t operator()(const SubsetMask& m) const { return std::size_t(m.hash()); }
};

} // namespace fusalg
