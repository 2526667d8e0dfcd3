#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rlgt {

/// Fixed-size packed bit vector (64-bit words, little-endian bit order
/// within a word).  Unused high bits of the last word are kept zero, so
/// whole-word operations (popcount, subset tests) need no masking.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t bits)
        : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    std::size_t word_count() const { return words_.size(); }
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) {
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    BitVec& operator|=(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    /// True iff every set bit of *this is also set in o.
    bool is_subset_of(const BitVec& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    /// Indices of set bits, ascending.
    std::vector<std::uint32_t> set_bits() const {
        std::vector<std::uint32_t> out;
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                out.push_back(static_cast<std::uint32_t>(wi * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.bits_ == b.bits_ && a.words_ == b.words_;
    }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace rlgt
